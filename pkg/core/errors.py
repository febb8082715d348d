"""
core/errors.py — Jerarquía de errores de nervio

Los chequeos nunca lanzan por una violación: devuelven un Report.
Estos errores se reservan para entradas que no cumplen la precondición
de una operación (dominios que no encajan, truncación insuficiente, ...).
"""
from typing import Any, Optional


class NervioError(Exception):
    """Base de todos los errores del paquete."""


class InvalidStructureError(NervioError):
    """Un valor viola un invariante. Lleva el reporte que lo demuestra."""

    def __init__(self, message: str, report: Optional[Any] = None):
        super().__init__(message)
        self.report = report


class DomainMismatchError(NervioError):
    """Composición o aplicación con dominio/codominio incompatibles."""


class TruncationError(NervioError):
    """Se pidió algo por encima del nivel de truncación."""


class SegalError(NervioError):
    """La condición de Segal falla; `witness` describe el contraejemplo."""

    def __init__(self, message: str, witness: Optional[dict] = None):
        super().__init__(message)
        self.witness = witness or {}


class MalformedMorphismError(NervioError):
    """Un morfismo no respeta fuentes/destinos."""


class WidthMismatchError(NervioError):
    """Diagramas de pegado con anchos incompatibles dentro de una columna."""


class IllFormedTermError(NervioError):
    """Término de store fuera de la firma (variable, localidad o valor)."""


class RewriteBudgetExceeded(NervioError):
    """El reescritor agotó su presupuesto de pasos."""


class CarrierOverflowError(NervioError):
    """Un carrier o hom-set supera el límite configurado."""


class UnknownMonadError(NervioError):
    """Nombre de mónada no soportado."""


class InputError(NervioError):
    """Archivo de entrada mal formado o inválido. `position` indica dónde."""

    def __init__(self, message: str, position: str = ""):
        super().__init__(f"{position}: {message}" if position else message)
        self.position = position
