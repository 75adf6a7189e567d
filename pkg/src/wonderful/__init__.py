"""Wonderful models of signed arrangements."""
