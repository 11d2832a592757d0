"""
Main entry point for tnn-cluster (python -m tnn_cluster).
"""

from .cli import main

if __name__ == '__main__':
    main()
