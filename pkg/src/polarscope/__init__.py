"""Detect and quantify controversy in per-topic retweet graphs.

The pipeline ingests tweet activity, builds one retweet graph per
(hashtag, day) topic, splits it into two sides, scores the split with a
random-walk controversy measure, lays the graph out with a force-directed
model, and persists everything behind a small exploration API.
"""

__version__ = "0.1.0"

SCHEMA_VERSION = 1


class PolarscopeError(Exception):
    """Base class for all errors raised by this package."""
