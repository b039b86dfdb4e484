"""Test problems for phi-combine.

Importing this package registers every problem as a named operator source.
"""

from phi_combine.operators.registry import register_operator
from phi_combine.problems.adr import ADRProblem, adr_build
from phi_combine.problems.base import SemilinearProblem
from phi_combine.problems.chebyshev import chebyshev_laplacian, chebyshev_operator
from phi_combine.problems.gallery import gallery_matrix, gallery_names, gallery_operator
from phi_combine.problems.lowrank import LowRankCore, dct_basis, lowrank_operator, make_core


# Register the Chebyshev Laplacian
def _create_chebyshev_operator(config: dict):
    """Factory function for the Chebyshev Laplacian; `size` is N."""
    return chebyshev_operator(config["size"]) if config.get("size") else chebyshev_operator()


register_operator("chebyshev", _create_chebyshev_operator)


# Register the ADR linear part
def _create_adr_operator(config: dict):
    """Factory function for the ADR diffusion-advection operator; `size` is the grid size per direction."""
    return adr_build(config["size"]).operator if config.get("size") else adr_build().operator


register_operator("adr", _create_adr_operator)


# Register the low-rank family
def _lowrank_factory(name: str):
    def _create_lowrank_operator(config: dict):
        return lowrank_operator(make_core(name, config.get("size")))[0]

    return _create_lowrank_operator


for _name in ("M1", "M2", "M3"):
    register_operator(f"lowrank-{_name}", _lowrank_factory(_name))


# Register the dense gallery
def _gallery_factory(name: str):
    def _create_gallery_operator(config: dict):
        return gallery_operator(name)

    return _create_gallery_operator


for _name in gallery_names():
    register_operator(f"gallery-{_name}", _gallery_factory(_name))
