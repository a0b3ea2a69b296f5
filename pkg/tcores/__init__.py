"""t-cores of integer partitions in an r x s box."""

__version__ = "0.1.0"
