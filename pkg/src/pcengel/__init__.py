"""Verification toolkit for finite power-conjugate presentations."""
