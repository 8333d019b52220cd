"""JSON interchange for exact values.

Rationals travel as strings "p/q" in lowest terms ("p" when the denominator
is 1); cyclotomic elements as {"n": conductor, "coords": [rationals]}; forms
as {"degree": d, "coeffs": [...]}; centers as {"d": d, "pencil": [[...], [...]]};
group specs as {"kind": family, "m": int?, "theta": [[...], [...]]}.  Parsing
is forgiving (plain ints, bare coefficient lists) but emission is canonical,
so fixed inputs serialize to byte-identical output.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclotomic import Cyc
from .forms import BinaryForm
from .groups import GroupKind, GroupSpec, MoebiusElement
from .linalg import Matrix
from .spaces import LinearSystem, PluckerPoint, ProjectionCenter


class FormatError(ValueError):
    """Malformed JSON payload for one of the interchange schemas."""


def rat_to_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_from_obj(obj) -> Fraction:
    if isinstance(obj, bool):
        raise FormatError("booleans are not rationals")
    if isinstance(obj, int):
        return Fraction(obj)
    if isinstance(obj, str):
        try:
            return Fraction(obj)
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(f"bad rational string {obj!r}") from exc
    raise FormatError(f"cannot read a rational from {type(obj).__name__}")


def cyc_to_obj(value: Cyc):
    value = value.reduced()
    if value.n == 1:
        return rat_to_str(value.co[0])
    return {"n": value.n, "coords": [rat_to_str(c) for c in value.co]}


def cyc_from_obj(obj) -> Cyc:
    if isinstance(obj, dict):
        try:
            return Cyc.from_coords(int(obj["n"]), [rat_from_obj(c) for c in obj["coords"]])
        except (KeyError, ValueError, TypeError) as exc:
            raise FormatError(f"bad cyclotomic element {obj!r}") from exc
    return Cyc.of(rat_from_obj(obj))


def form_to_obj(form: BinaryForm) -> dict:
    return {"degree": form.degree, "coeffs": [cyc_to_obj(c) for c in form.coeffs]}


def form_from_obj(obj) -> BinaryForm:
    if isinstance(obj, list):
        return BinaryForm(len(obj) - 1, [cyc_from_obj(c) for c in obj])
    if isinstance(obj, dict):
        try:
            coeffs = [cyc_from_obj(c) for c in obj["coeffs"]]
            return BinaryForm(int(obj["degree"]), coeffs)
        except (KeyError, ValueError, TypeError) as exc:
            raise FormatError(f"bad form {obj!r}") from exc
    raise FormatError(f"cannot read a form from {type(obj).__name__}")


def matrix_to_obj(mat: Matrix) -> list:
    return [[cyc_to_obj(mat[i, j]) for j in range(mat.cols)] for i in range(mat.rows)]


def matrix_from_obj(obj) -> Matrix:
    if not isinstance(obj, list) or not obj:
        raise FormatError("matrix payload must be a nonempty list of rows")
    try:
        return Matrix([[cyc_from_obj(v) for v in row] for row in obj])
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad matrix {obj!r}") from exc


def center_to_obj(center: ProjectionCenter) -> dict:
    return {"d": center.degree, "pencil": matrix_to_obj(center.pencil)}


def center_from_obj(obj) -> ProjectionCenter:
    if not isinstance(obj, dict) or "d" not in obj or "pencil" not in obj:
        raise FormatError('a center needs keys "d" and "pencil"')
    return ProjectionCenter(int(obj["d"]), matrix_from_obj(obj["pencil"]))


def plucker_to_obj(point: PluckerPoint) -> list:
    return [cyc_to_obj(c) for c in point.minors]


def group_spec_to_obj(spec: GroupSpec) -> dict:
    out: dict = {"kind": spec.kind.family}
    if spec.kind.m is not None:
        out["m"] = spec.kind.m
    out["theta"] = matrix_to_obj(spec.theta.matrix)
    return out


def group_spec_from_obj(obj) -> GroupSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise FormatError('a group spec needs a "kind"')
    family = obj["kind"]
    m = obj.get("m")
    try:
        kind = GroupKind(family, int(m) if m is not None else None)
    except Exception as exc:
        raise FormatError(str(exc)) from exc
    theta_obj = obj.get("theta")
    if theta_obj is None:
        theta = MoebiusElement.identity()
    else:
        theta = MoebiusElement(matrix_from_obj(theta_obj))
    return GroupSpec(kind, theta)


def system_to_obj(system: LinearSystem) -> dict:
    return {"degree": system.degree, "basis": [form_to_obj(f) for f in system.basis]}


def system_from_obj(obj) -> LinearSystem:
    if not isinstance(obj, dict) or "degree" not in obj or "basis" not in obj:
        raise FormatError('a linear system needs keys "degree" and "basis"')
    degree = int(obj["degree"])
    basis = [form_from_obj(f) for f in obj["basis"]]
    return LinearSystem(degree, basis)
