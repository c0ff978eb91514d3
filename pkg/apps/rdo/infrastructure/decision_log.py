"""
Decision Log.
Registro CSV por bloque (índice, modo, D, R, coste) de una codificación con RDO
o de un barrido, con una columna qp adicional.
"""

import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Sequence

from apps.rdo.domain.entities import BlockDecision

logger = logging.getLogger(__name__)

DECISION_COLUMNS = ['index', 'mode', 'distortion', 'bits', 'cost']
SWEEP_DECISION_COLUMNS = ['qp'] + DECISION_COLUMNS


def format_real(value: float) -> str:
    return f"{value:.9g}"


def decision_rows(decisions: Iterable[BlockDecision]) -> List[dict]:
    return [
        {
            'index': decision.index,
            'mode': decision.mode.name,
            'distortion': format_real(decision.distortion),
            'bits': decision.bits,
            'cost': format_real(decision.cost),
        }
        for decision in decisions
    ]


def write_decisions(path, decisions: Iterable[BlockDecision]) -> int:
    """Escribir el registro en orden de bloque; devuelve el número de filas."""
    rows = decision_rows(decisions)
    with Path(path).open('w', newline='', encoding='utf-8') as handle:
        writer = csv.DictWriter(handle, fieldnames=DECISION_COLUMNS, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    logger.info(f"Registro de decisiones escrito: {path} ({len(rows)} bloques)")
    return len(rows)


def write_sweep_decisions(path, decisions_by_qp: Dict[int, Sequence[BlockDecision]]) -> int:
    """Registro de un barrido: filas ordenadas por QP y, dentro de cada QP, por bloque."""
    rows = [
        {'qp': qp, **row}
        for qp in sorted(decisions_by_qp)
        for row in decision_rows(decisions_by_qp[qp])
    ]
    with Path(path).open('w', newline='', encoding='utf-8') as handle:
        writer = csv.DictWriter(handle, fieldnames=SWEEP_DECISION_COLUMNS, lineterminator='\n')
        writer.writeheader()
        writer.writerows(rows)
    logger.info(f"Registro de decisiones del barrido escrito: {path} ({len(decisions_by_qp)} QPs, {len(rows)} filas)")
    return len(rows)
