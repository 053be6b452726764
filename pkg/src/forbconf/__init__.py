"""Forbidden configurations in simple (0,1)-matrices: constructions, containment and exact bounds."""

from .matrix import BinaryMatrix, ColumnVector
from .containment import ConfigWitness, contains_configuration

__all__ = ["BinaryMatrix", "ColumnVector", "ConfigWitness", "contains_configuration"]
