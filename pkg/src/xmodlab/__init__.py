"""xmodlab: a computational laboratory for crossed modules of finite groups.

Build crossed modules, localize them (abelianization, nullification,
localization at a map), and test exact sequences for flatness and
fiberwise behaviour -- all with exhaustive, witness-producing checks
at small orders.
"""
from .config import DEFAULT_LIMITS, Limits
from .errors import (CM1Violation, CM2Violation, ConditionFails, NotExact,
                     NotWellDefined, ParseError, SizeLimitExceeded,
                     StageAssertionFailed, ValidationError, XModLabError)
from .fgab import (FgAbGroup, ab_kernel, ab_image, ab_pullback, make_ab_hom,
                   lf_ab_localize, smith_normal_form)
from .flatness import (admissibility_check, admissibility_scan, apply_to_ses,
                       birkhoff_check, commutation_check, counterexample_demo,
                       default_counterexample_phi, fiberwise_condition,
                       fiberwise_localize, fgab_admissibility_square,
                       isokernel_check, nullification_ladder, pullback_ses)
from .groups import (FiniteGroup, GroupHom, cyclic, dihedral, enumerate_homs,
                     make_hom, named_group, product, symmetric)
from .localize import (AbLocalizer, ILocalizer, LfLocalizer,
                       NullificationLocalizer, PxzLocalizer, is_acyclic,
                       kernel_acyclicity)
from .xmod import (CrossedModule, ShortExactSequence, XModMorphism,
                   enumerate_xmod_morphisms, functor_R, functor_Tr, functor_X,
                   inclusion_xmod, make_ses, make_sub, make_xmod,
                   make_xmorphism, ses_from_normal_sub, xnormal_closure,
                   xpullback, xquotient)

__version__ = "0.1.0"
