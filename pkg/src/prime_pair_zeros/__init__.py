"""Prime pairs, Hardy-Littlewood constants and zeta-zero sums."""

__version__ = "0.1.0"
