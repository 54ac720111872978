"""Marks the repo root so pytest resolves the tests and the vermin directory from here."""
