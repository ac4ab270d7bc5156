"""Exact coherence-based reasoning over conditional events.

Events are propositional expressions over named atoms; conditional events
``A|H`` are three-valued.  Compound and iterated conditionals are
conditional random quantities whose values are polynomials in prevision
symbols.  Assessments are checked for coherence with an exact rational
simplex, and p-entailment is decided by three independent routes.
"""

from .coherence import (
    CoherenceReport,
    check_coherence,
    coherence_report,
    coherent_mu_set,
    entails_with_defaults,
    extension_interval,
    strict_region_nonempty,
)
from .compound import (
    Crq,
    closure,
    conjunction,
    conjunction2,
    conjunction3,
    conjunction_with_gn,
    indicator,
    iterated2,
    iterated_on_conjunction,
    quasi_conjunction,
    reduce_equal_crq,
)
from .entailment import (
    EntailmentVerdict,
    disjunctive_characterization,
    forced_mu_set,
    p_consistent,
    p_entails_direct,
    p_entails_iterated,
    p_entails_pair,
    p_entails_qc_witness,
    verdicts,
)
from .errors import CoherenceError
from .events import (
    FALSE,
    TRUE,
    Atom,
    ConditionalEvent,
    Frame,
    atoms,
    constituents,
    equivalent,
    gn_implies,
    implies,
    satisfiable,
)
from .intervals import CoherentSet, RationalInterval
from .kernels import BACKEND
from .poly import Poly
from .rules import builtin_rules, get_rule, verify_all, verify_qc_theorem, verify_rule

from types import ModuleType as _Module

__all__ = sorted(n for n, v in globals().items() if not n.startswith("_") and not isinstance(v, _Module))
