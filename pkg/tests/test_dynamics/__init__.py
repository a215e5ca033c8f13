"""Tests for dynamics module."""
