"""Sharp-minimax density deconvolution toolkit."""

try:
    from ._deconv import *  # noqa: F401,F403
except ImportError:  # source checkout with the extension on sys.path
    from _deconv import *  # noqa: F401,F403
