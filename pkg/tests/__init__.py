"""Tests for rbmodules."""
