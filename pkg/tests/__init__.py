"""Test suite for tnn-cluster."""
