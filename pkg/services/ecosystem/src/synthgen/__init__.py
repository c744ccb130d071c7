from .generator import generate_coupled, twin_id
from .params import SynthParams, build_params

__all__ = ["SynthParams", "build_params", "generate_coupled", "twin_id"]
