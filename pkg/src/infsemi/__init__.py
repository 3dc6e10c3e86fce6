"""Computational toolkit for partial infinitary semigroups: ordinals in
Cantor normal form, transfinite words, finite presentations, axiom audits,
constructions and inferior limits."""

from .ordinal import *  # noqa: F401,F403
from .orderword import *  # noqa: F401,F403
from .algebra import *  # noqa: F401,F403
from .audit import *  # noqa: F401,F403
from .constructions import *  # noqa: F401,F403
from .theorems import *  # noqa: F401,F403
from .limits import *  # noqa: F401,F403

__version__ = "0.1.0"
