"""Operator registry for phi-combine.

This module provides a registry of named operator sources and functions
to register and build them from a configuration dictionary.
"""

from pathlib import Path
from typing import Callable

from phi_combine.operators.base import LinearOperator
from phi_combine.operators.matrix_market import read_matrix_market

# Type for operator factory functions
OperatorFactory = Callable[[dict], LinearOperator]

# Registry of available operator sources and their factory functions
OPERATOR_FACTORIES: dict[str, OperatorFactory] = {}


def register_operator(kind: str, factory_func: OperatorFactory):
    """Register an operator source.

    Args:
        kind: The source name used on the command line
        factory_func: Function that builds the operator from a configuration dictionary
    """
    OPERATOR_FACTORIES[kind] = factory_func


def get_operator(kind: str, config: dict = None) -> LinearOperator:
    """Build an operator from a registered source.

    Args:
        kind: Registered source name
        config: Factory configuration

    Returns:
        The constructed LinearOperator
    """
    if not (factory := OPERATOR_FACTORIES.get(kind)):
        supported = ", ".join(sorted(OPERATOR_FACTORIES))
        raise ValueError(f"Unknown operator source: {kind}. Supported sources: {supported}")

    return factory(config or {})


def resolve_source(source: str, size: int = None) -> LinearOperator:
    """Build an operator from a command-line SOURCE: a .mtx path or a registered problem name."""
    if source.endswith(".mtx"):
        return get_operator("mtx", {"path": Path(source)})

    config = {"size": size} if size else {}
    return get_operator(source, config)


def available_sources() -> list[str]:
    return sorted(OPERATOR_FACTORIES)


# Register the Matrix Market source
def _create_mtx_operator(config: dict):
    """Factory function for Matrix Market files."""
    return read_matrix_market(config["path"])


register_operator("mtx", _create_mtx_operator)
