"""schurlab: construction, enumeration and schurity testing of S-rings."""

__version__ = "0.1.0"

from .groups import Group, Subgroup, Section, build_group  # noqa: F401
from .perms import PermGroup, right_regular, left_regular, transitivity_module  # noqa: F401
from .srings import SRing, from_partition, trivial, full, center_sring  # noqa: F401
from .fusion import enumerate_central, enumerate_all, cyclotomic  # noqa: F401
from .schurity import is_schurian, is_generalized_schur, is_schur_group, cyclic_schur_family  # noqa: F401
