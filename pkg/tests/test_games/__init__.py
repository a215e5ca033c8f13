"""Tests for games module."""
