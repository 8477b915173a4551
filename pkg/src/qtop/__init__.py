"""qtop: finite topological spaces, truncated free topological groups and
the topologized fundamental group of suspensions of finite spaces."""

__version__ = "0.1.0"
