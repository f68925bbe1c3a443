"""Exact PL homeomorphisms of the line and their quasi-isometry machinery."""

from .rationals import Rational, as_rational, decimal_str, format_rational, parse_rational
from .plmaps import (EMPTY_SUPPORT, IDENTITY, UNBOUNDED_SUPPORT, FinitePLMap,
                     Interval, InvalidMapError, MapParseError, breakpoint_set,
                     compose, equals, evaluate, invert, map_power, parse_map,
                     serialize_map, slope_set, support)
from .qi import (QIConstant, SlopeBound, TrivialityVerdict, displacement_sup,
                 first_qi_violation, is_trivial_qi, iterate_displacement,
                 qi_constant_from_slopes, slope_bound, triviality_verdict,
                 verify_qi_inequality)
from .approx import (ApproximationGrid, OracleContractError, QIOracle,
                     ScanExceeded, SlopeOutOfRange, TableDomainError,
                     agreement_bound, agreement_report, approximate_with_grid,
                     block_swap_oracle, bounded_noise_oracle, build_grid,
                     identity_oracle, monotone_witness_down,
                     monotone_witness_up, negated, pl_approximate,
                     pl_map_oracle, slope_interval, sqrt_drift_oracle,
                     table_oracle, validate_oracle)
from .lifts import (Composite, DomainError, EtaEmbed, FinitePart, GrowthWitness,
                    H0InverseMap, H0Map, H1InverseMap, H1Map, LiftCore,
                    PeriodicLift, compose_lifts, conjugate_slope_bounds,
                    default_probes, eta_embed, exact_local_slope,
                    find_growth_witness, growth_formula, growth_table,
                    h0_eval, h0_inverse_eval, h1_eval, h1_inverse_eval,
                    lift_from_circle_core, psi_conjugate, witness_from_point)
from .thompson import (DyadicCertificate, ThompsonWord, WordParseError,
                       certify_dyadic, check_relation, embed_growth_witness,
                       embed_to_qi, generator, parse_word, realize,
                       word_problem)

__version__ = "0.1.0"
