"""Tests for measures module."""
