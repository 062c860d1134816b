"""Chain partitions into divisors, ordered factorizations, and the constants governing their growth."""

__version__ = "0.1.0"
