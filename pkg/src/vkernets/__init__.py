"""Value-substitution kernel terms and their proof nets.

Terms of a call-by-value lambda calculus with explicit substitutions are
translated to nets with par-boxes; nets can be checked for correctness,
read back to terms and reduced, and the two reductions are compared step
by step.
"""

from .bisim import (check_local_confluence, check_one_step, cosimulate, mirror, net_reduction_graph,
                    redex_bijection, term_reduction_graph)
from .correctness import (check_correct, classify_substitutions, correction_graph, is_correct, is_subnet,
                          kingdom, readback, sequentialize, split_free_substitution)
from .dynamics import Cut, find_cuts, normalize_net, reduce_e_der, reduce_e_weak, reduce_m, step_net
from .errors import *  # noqa: F401,F403
from .iso import canonical_key, iso_mapping, net_iso
from .nets import (Link, Net, deserialize, export_dot, free_weakenings, level, serialize,
                   validate_net)
from .structural import vo_equiv, vo_key
from .terms import (Abs, App, ESub, Var, find_redexes, fv, kernelize, normalize, parse_term, show, step,
                    subst, well_name)
from .translation import translate, translate_annotated

__version__ = "0.1.0"
