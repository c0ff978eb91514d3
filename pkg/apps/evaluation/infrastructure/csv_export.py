"""
Curve Export.
Curvas RD en CSV (metadatos de reproducibilidad como comentarios) y en .dat para gnuplot.
Ver docs/CSV_SCHEMA.md.
"""

import csv
import logging
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from apps.evaluation.domain.entities import RDCurve, RDPoint
from apps.rdo.domain.entities import BlockDecision
from apps.rdo.infrastructure.decision_log import format_real, write_decisions
from shared.domain.exceptions import NotFoundException

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ['label', 'qp', 'bits', 'bpp', 'psnr', 'idse', 'feature_distance', 'encode_flops']
DAT_COLUMNS = ['qp', 'bpp', 'psnr', 'idse', 'feature_distance', 'bits']
COMMENT = '#'


def metadata_lines(curve: RDCurve) -> List[str]:
    """`# label=<etiqueta>` y después una línea `# clave=valor` por metadato, en orden alfabético."""
    lines = [f"{COMMENT} label={curve.label}"]
    lines.extend(f"{COMMENT} {key}={curve.metadata[key]}" for key in sorted(curve.metadata))
    return lines


def curve_rows(curve: RDCurve) -> List[Dict[str, str]]:
    return [
        {
            'label': curve.label,
            'qp': str(point.qp),
            'bits': str(point.bits),
            'bpp': format_real(point.bpp),
            'psnr': format_real(point.psnr),
            'idse': format_real(point.idse),
            'feature_distance': format_real(point.feature_distance),
            'encode_flops': str(point.encode_flops),
        }
        for point in curve.points
    ]


def write_curves(path, curves: Sequence[RDCurve]) -> None:
    """Comentarios de metadatos, cabecera y una fila por punto; columnas en orden fijo."""
    with Path(path).open('w', newline='', encoding='utf-8') as handle:
        for curve in curves:
            for line in metadata_lines(curve):
                handle.write(line + '\n')
        writer = csv.DictWriter(handle, fieldnames=CURVE_COLUMNS, lineterminator='\n')
        writer.writeheader()
        for curve in curves:
            writer.writerows(curve_rows(curve))
    logger.info(f"Curvas escritas: {path} ({len(curves)} curvas)")


def parse_metadata(line: str) -> Optional[Tuple[str, str]]:
    """Par (clave, valor) de un comentario; se parte en el primer `=` y el valor puede tener espacios."""
    body = line[len(COMMENT):]
    if body.startswith(' '):
        body = body[1:]
    if '=' not in body:
        return None
    key, value = body.split('=', 1)
    return key.strip(), value


def read_curves(path) -> List[RDCurve]:
    """Leer un CSV escrito por write_curves; las curvas conservan su orden de aparición."""
    path = Path(path)
    try:
        lines = path.read_text(encoding='utf-8').splitlines()
    except FileNotFoundError:
        raise NotFoundException('CSV de curvas', str(path))

    metadata: Dict[str, Dict[str, str]] = {}
    current: Dict[str, str] = {}
    body = []
    for line in lines:
        if not line.startswith(COMMENT):
            body.append(line)
            continue
        pair = parse_metadata(line)
        if pair is None:
            continue
        key, value = pair
        if key == 'label':
            current = metadata.setdefault(value, {})
        else:
            current[key] = value

    points: Dict[str, List[RDPoint]] = {}
    for row in csv.DictReader(body):
        points.setdefault(row['label'], []).append(
            RDPoint(
                qp=int(row['qp']),
                bits=int(row['bits']),
                bpp=float(row['bpp']),
                psnr=float(row['psnr']),
                idse=float(row['idse']),
                feature_distance=float(row['feature_distance']),
                encode_flops=int(row['encode_flops']),
            )
        )
    return [
        RDCurve(label=label, points=tuple(rows), metadata=metadata.get(label, {}))
        for label, rows in points.items()
    ]


def write_dat(path, curves: Iterable[RDCurve]) -> None:
    """Un bloque por curva separado por dos líneas en blanco (índices de gnuplot)."""
    blocks = []
    for curve in curves:
        lines = [f"{COMMENT} {curve.label}", f"{COMMENT} {' '.join(DAT_COLUMNS)}"]
        for point in curve.points:
            values = [str(point.qp), format_real(point.bpp), format_real(point.psnr),
                      format_real(point.idse), format_real(point.feature_distance), str(point.bits)]
            lines.append(' '.join(values))
        blocks.append('\n'.join(lines))
    Path(path).write_text('\n\n\n'.join(blocks) + ('\n' if blocks else ''), encoding='utf-8')


def emit_csv(
    curves: Sequence[RDCurve],
    path,
    decisions: Optional[Sequence[BlockDecision]] = None,
) -> List[Path]:
    """CSV de curvas, .dat hermano y, si se dan, el registro de decisiones."""
    path = Path(path)
    written = [path, path.with_suffix('.dat')]
    write_curves(path, curves)
    write_dat(written[1], curves)
    if decisions is not None:
        written.append(path.with_name(f"{path.stem}_decisions.csv"))
        write_decisions(written[-1], decisions)
    return written
