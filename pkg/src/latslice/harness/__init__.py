"""Inequality checks, body families, proof procedures and sweep runners."""
