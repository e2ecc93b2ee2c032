#!/usr/bin/env python3
"""CoL Toolkit - Main Application

    python -m src.main prove --system cl1 "((p->q)*(p->r)) -> (p->(q*r))"
"""
import sys

from src.ui.cli import main

if __name__ == '__main__':
    sys.exit(main())
