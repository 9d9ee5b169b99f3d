"""Exact computation engine for finite groups with operators.

Groups are Cayley tables with labelled endomorphism actions; the package
computes subgroup lattices, socles, isotypical components, supports,
restricted-direct-sum verdicts, semisimplicity evidence and normal-morphism
decompositions, all exactly and at small-group scale.
"""

from .core import (DEFAULT_CERTIFICATE_CAP, DEFAULT_CONSTRUCTION_CAP,
                   DEFAULT_HOM_CAP, DEFAULT_LATTICE_CAP, FiniteOmegaGroup,
                   OmegaMorphism, ProductWitness, build_from_table,
                   build_named, direct_product, identity_morphism,
                   null_morphism, quotient, with_inner_operators)
from .decomposition import (Decomposition, SdrReport, SemisimplicityEvidence,
                            SupportSet, check_cc, decompose,
                            find_supplementary, greedy_refine, is_semisimple,
                            isotypical_component, mutual_independence,
                            sdr_report, semisimplicity, socle, support, theta)
from .errors import (CapExceededError, DslError, EngineInvariantError,
                     OmegaGroupError, ValidationError)
from .isomorphism import (IsoCertificate, are_isomorphic, certificate,
                          encode_group_bytes, group_from_certificate,
                          raw_digest)
from .morphisms import (ComponentVector, HomSet, component_of_morphism,
                        enumerate_homs, is_normal_morphism, phi, phi_inverse)
from .subgroups import (SubgroupFamily, SubgroupHandle, centralizer,
                        commutator_subgroup, enumerate_normal_omega_subgroups,
                        enumerate_omega_subgroups, full_subgroup,
                        generated_subgroup, generating_sequence, is_normal,
                        is_simple_subgroup, join_normal, normal_closure,
                        simple_normal_subgroups, subgroup_as_group,
                        subgroup_from_mask, subgroup_from_members,
                        trivial_subgroup)

__version__ = "0.1.0"
