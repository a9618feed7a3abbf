"""Shared builders for test records, states and feature vectors."""
