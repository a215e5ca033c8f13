"""Tests for schemas module."""
