"""Sum-free subsets, character sums, L(1) values and coset discrepancies
over F_p, with a sweep-based verification harness."""

from ._version import __version__
from .characters import (
    Character,
    char_eval,
    dual_characters,
    gauss_sum,
    interval_char_sum,
    legendre_character,
    principal_character,
    twisted_exp_sum,
)
from .discrepancy import (
    CosetProfile,
    DiscrepancyTable,
    coset_profile,
    delta_table,
    delta_via_series,
    dilation_average,
    dilation_averages_all,
    even_char_sum_bound,
    extremal_cosets,
    folded_energy_identity,
    parseval_discrepancy,
    weighted_parseval,
)
from .errors import SumfreeError
from .fourier import (
    bohr_set,
    convolve,
    dft,
    dft_direct,
    idft,
    indicator,
    schur_count,
    schur_count_via_transform,
    spectrum,
    subgroup_transform_max,
    wiener_norms,
)
from .lfunctions import (
    CHI3,
    CHI4,
    CHI8,
    ProductCharacter,
    SmallModulusCharacter,
    digamma,
    interval_sum_via_L,
    l_one,
    l_one_truncated,
    legendre_third_identity,
    legendre_third_via_rho,
)
from .modp import (
    Interval,
    MAX_PRIME,
    PrimeContext,
    SubgroupContext,
    build_context,
    custom_interval,
    eighths_interval,
    is_prime,
    legendre,
    primes_in_range,
    subgroup_of_index,
    thirds_interval,
)
from .report import Case, VerificationReport, report_to_csv, report_to_json, reports_from_json
from .rng import SplitMix64, stream
from .suites import SUITES, SweepConfig, parse_config_file, run_suite, sweep
from .sumfree import (
    SumFreeReport,
    is_solution_free,
    sf_dilation_bound,
    sf_exact,
    sigma_averages,
)

__all__ = [name for name in dir() if not name.startswith("_")]
