"""Tests module."""
