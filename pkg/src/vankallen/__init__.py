"""Exact level-zero graded characters, quantum Bruhat graphs and LS paths in small rank."""
from .affine import AffineElt, compose, pi_J, sil, translation
from .cartan import ConfigurationError, RootSystem, WeylElt, bruhat_leq, build_root_system, parabolic_quotient
from .characters import gch_K, gch_K_direct, gch_V, macdonald_E_inf, verify_identity
from .paths import QLSPath, SLSPath, deg, deg_at, qls_enumerate, sls_root_e, sls_root_f, sls_validate
from .poly import GradedChar, GroupAlgebraElt, expand_truncated
from .qbg import build_qbg, eqb, k_membership, si_leq

__version__ = "0.1.0"
