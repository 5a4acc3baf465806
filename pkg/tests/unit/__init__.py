"""Unit tests for costarnet."""
