from .binning import DEFAULT_BINS, PairedTable, bin_paired
from .degree import FIT_METHODS, ccdf, fit_power_law
from .marginal import marginal_homogeneity
from .models import CcdfPoints, PowerLawFit, TestName, TestResult
from .nonparametric import ks_two_sample, wilcoxon_exact_pvalue, wilcoxon_signed_rank

__all__ = [
    "DEFAULT_BINS",
    "FIT_METHODS",
    "CcdfPoints",
    "PairedTable",
    "PowerLawFit",
    "TestName",
    "TestResult",
    "bin_paired",
    "ccdf",
    "fit_power_law",
    "ks_two_sample",
    "marginal_homogeneity",
    "wilcoxon_exact_pvalue",
    "wilcoxon_signed_rank",
]
