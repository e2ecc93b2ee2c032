"""
CoL Toolkit - Provers
=====================
"""
