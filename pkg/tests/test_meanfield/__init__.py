"""Tests for meanfield module."""
