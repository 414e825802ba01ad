"""Servicios de cálculo."""
