"""Tests for rt_surfaces."""
