"""Tests for prime-pair-zeros."""
