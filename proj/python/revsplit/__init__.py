"""Two-stage reviewer-split assignment toolkit."""

try:
    from ._revsplit import *  # noqa: F401,F403
    from . import _revsplit as _impl
except ImportError:  # build-tree layout: extension next to the package dir
    from _revsplit import *  # noqa: F401,F403
    import _revsplit as _impl

__all__ = [name for name in dir(_impl) if not name.startswith("_")]
__version__ = "0.1.0"
