"""Reading and writing workspace files.

A workspace file is a JSON document bundling everything one computation
needs: the scalar field, a superalgebra given by structure constants, an
optional finite symmetry group with its action, and optional named
modules, cochains, and deformations.  The layout:

    {
      "field": "rational",                      // or {"cyclotomic": m}
      "algebra": {
        "basis": [["e11", 0], ["e12", 1]],      // [label, parity], evens first
        "brackets": {"e11,e12": {"e12": "1"}}   // only pairs with i <= j
      },
      "group": {"table": [[0,1],[1,0]], "identity": 0},
      "action": [[...], [...]],                 // one matrix per group element
      "modules": {"W": {"basis": [...], "action": {...}, "matrices": [...]}},
      "cochains": {"f": {"arity": 2, "parity": 0, "module": "adjoint",
                         "coords": {"e11,e12|e12": "1"}}},
      "deformations": {"mu": {"terms": ["bracket", "f"]}}
    }

Structure constants list each bracket once, lower basis index first; the
mirrored pairs follow from super-antisymmetry and are filled in by the
parser.  All scalars are written as exact strings ("2/3", "1 - z^2").
Cochain coordinate keys are "arg,arg,...|target" with the argument tuple
in canonical order.  Parsing is eager: a file that names an unknown
label or breaks an axiom is rejected up front, with a ParseError for
malformed input and a ValidationError (naming the axiom and a witness)
for well-formed input that fails a mathematical check.

``parse`` and ``serialize`` are inverse in both directions: serializing
a parsed file yields its canonical form, and parsing a serialized
workspace reproduces it exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .cohomology import Cochain
from .deformation import Deformation, _bracket_cochain
from .errors import ParseError, ValidationError
from .graded import GradedBasis, MultilinearMap, Vector
from .group_action import (
    ActionRep,
    FiniteGroup,
    cyclic_group,
    trivial_action,
    validate_action,
    validate_module_action,
)
from .scalars import RATIONAL, FieldSpec, Scalar, cyclo, parse_scalar, serialize_scalar
from .superalgebra import LieSuperalgebra, LModule, adjoint_module, validate_module

ADJOINT = "adjoint"
BRACKET_TERM = "bracket"

_TOP_KEYS = {"field", "algebra", "group", "action", "modules", "cochains", "deformations"}


@dataclass
class ModuleEntry:
    module: LModule
    rep: ActionRep | None


@dataclass
class CochainEntry:
    cochain: Cochain
    module: str


@dataclass
class Workspace:
    spec: FieldSpec
    algebra: LieSuperalgebra
    group: FiniteGroup | None = None
    rep: ActionRep | None = None
    modules: dict[str, ModuleEntry] = field(default_factory=dict)
    cochains: dict[str, CochainEntry] = field(default_factory=dict)
    deformations: dict[str, tuple[str, ...]] = field(default_factory=dict)
    _deformation_cache: dict[str, Deformation] = field(
        default_factory=dict, compare=False, repr=False
    )

    def module_names(self) -> list[str]:
        return [ADJOINT] + sorted(self.modules)

    def resolve_module(self, name: str) -> tuple[LModule, ActionRep | None]:
        if name == ADJOINT:
            return adjoint_module(self.algebra), self.rep
        entry = self.modules.get(name)
        if entry is None:
            raise ParseError(f"unknown module {name!r}; have {self.module_names()}")
        return entry.module, entry.rep

    def module_rep_arg(self, name: str):
        """The ``rep`` argument cohomology routines expect for this module."""
        module, rep_m = self.resolve_module(name)
        if self.rep is None:
            return module, None
        if name == ADJOINT:
            return module, self.rep
        return module, (self.rep, rep_m)

    def cochain(self, name: str) -> Cochain:
        entry = self.cochains.get(name)
        if entry is None:
            raise ParseError(f"unknown cochain {name!r}; have {sorted(self.cochains)}")
        return entry.cochain

    def effective_rep(self) -> ActionRep:
        if self.rep is not None:
            return self.rep
        return trivial_action(cyclic_group(1), self.spec, self.algebra.basis.parities)

    def deformation(self, name: str) -> Deformation:
        if name not in self.deformations:
            raise ParseError(
                f"unknown deformation {name!r}; have {sorted(self.deformations)}"
            )
        if name not in self._deformation_cache:
            terms = []
            for term in self.deformations[name]:
                if term == BRACKET_TERM:
                    terms.append(_bracket_cochain(self.algebra))
                else:
                    terms.append(self.cochains[term].cochain)
            self._deformation_cache[name] = Deformation(
                self.algebra, self.effective_rep(), terms
            )
        return self._deformation_cache[name]


def _expect(cond: bool, path: str, msg: str):
    if not cond:
        raise ParseError(f"{path}: {msg}")


def _as_dict(raw, path: str) -> dict:
    _expect(isinstance(raw, dict), path, f"expected an object, got {type(raw).__name__}")
    return raw


def _as_list(raw, path: str) -> list:
    _expect(isinstance(raw, list), path, f"expected an array, got {type(raw).__name__}")
    return raw


def _scalar(spec: FieldSpec, raw, path: str) -> Scalar:
    if isinstance(raw, int):
        raw = str(raw)
    _expect(isinstance(raw, str), path, "scalars must be written as strings")
    try:
        return parse_scalar(spec, raw)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def _parse_field(raw) -> FieldSpec:
    if raw == "rational":
        return RATIONAL
    if isinstance(raw, dict) and set(raw) == {"cyclotomic"}:
        m = raw["cyclotomic"]
        _expect(isinstance(m, int) and m >= 1, "field.cyclotomic", "conductor must be a positive integer")
        return cyclo(m)
    raise ParseError('field: expected "rational" or {"cyclotomic": m}')


def _parse_basis(raw, path: str) -> GradedBasis:
    rows = _as_list(raw, path)
    names, parities = [], []
    for k, row in enumerate(rows):
        _expect(
            isinstance(row, list) and len(row) == 2 and isinstance(row[0], str)
            and row[1] in (0, 1),
            f"{path}[{k}]",
            "expected a [label, parity] pair with parity 0 or 1",
        )
        names.append(row[0])
        parities.append(row[1])
    try:
        return GradedBasis(tuple(names), tuple(parities))
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def _label_index(basis: GradedBasis, label: str, path: str) -> int:
    if label not in basis.names:
        raise ParseError(f"{path}: unknown label {label!r}; basis is {list(basis.names)}")
    return basis.names.index(label)


def _parse_vector(spec, space: GradedBasis, raw, path: str) -> Vector:
    table = _as_dict(raw, path)
    coords = {}
    for label, val in table.items():
        j = _label_index(space, label, path)
        coords[j] = _scalar(spec, val, f"{path}.{label}")
    return Vector(coords)


def _parse_brackets(spec, basis: GradedBasis, raw, path: str) -> MultilinearMap:
    table = _as_dict(raw, path)
    components: dict[tuple[int, int], Vector] = {}
    par = basis.parities
    for key, val in table.items():
        parts = key.split(",")
        _expect(len(parts) == 2, f"{path}[{key!r}]", 'keys look like "a,b"')
        i = _label_index(basis, parts[0], f"{path}[{key!r}]")
        j = _label_index(basis, parts[1], f"{path}[{key!r}]")
        _expect(i <= j, f"{path}[{key!r}]", "list each pair once, lower basis index first")
        _expect((i, j) not in components, f"{path}[{key!r}]", "duplicate bracket entry")
        vec = _parse_vector(spec, basis, val, f"{path}[{key!r}]")
        if vec.is_zero():
            continue
        if i == j and par[i] == 0:
            raise ValidationError(
                f"{path}[{key!r}]: super-antisymmetry forces the bracket of an even "
                "vector with itself to vanish"
            )
        components[(i, j)] = vec
        if i != j:
            # mirrored entry: [y, x] = -(-1)^{|x||y|} [x, y]
            components[(j, i)] = vec if par[i] == 1 and par[j] == 1 else -vec
    try:
        return MultilinearMap(2, 0, basis, basis, components)
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def _parse_matrix(spec, raw, dim: int, path: str) -> list[list[Scalar]]:
    rows = _as_list(raw, path)
    _expect(len(rows) == dim, path, f"expected a {dim} x {dim} matrix")
    out = []
    for r, row in enumerate(rows):
        cells = _as_list(row, f"{path}[{r}]")
        _expect(len(cells) == dim, f"{path}[{r}]", f"expected {dim} entries")
        out.append([_scalar(spec, c, f"{path}[{r}][{k}]") for k, c in enumerate(cells)])
    return out


def _parse_group(raw) -> FiniteGroup:
    body = _as_dict(raw, "group")
    _expect(set(body) <= {"table", "identity"}, "group", f"unknown keys {sorted(set(body) - {'table', 'identity'})}")
    _expect("table" in body and "identity" in body, "group", 'needs "table" and "identity"')
    table = _as_list(body["table"], "group.table")
    for r, row in enumerate(table):
        cells = _as_list(row, f"group.table[{r}]")
        _expect(all(isinstance(c, int) for c in cells), f"group.table[{r}]", "entries are element indices")
    _expect(isinstance(body["identity"], int), "group.identity", "expected an element index")
    try:
        return FiniteGroup(len(table), tuple(tuple(r) for r in table), body["identity"])
    except ValidationError as exc:
        raise ValidationError(f"group: {exc}") from exc


def _parse_action(spec, group, basis, raw, path: str) -> ActionRep:
    mats = _as_list(raw, path)
    _expect(len(mats) == group.order, path, "one matrix per group element")
    matrices = [
        _parse_matrix(spec, m, len(basis), f"{path}[{g}]") for g, m in enumerate(mats)
    ]
    return ActionRep(group, spec, basis.parities, matrices)


def _parse_module(ws: Workspace, name: str, raw) -> ModuleEntry:
    path = f"modules.{name}"
    body = _as_dict(raw, path)
    allowed = {"basis", "action", "matrices"}
    _expect(set(body) <= allowed, path, f"unknown keys {sorted(set(body) - allowed)}")
    _expect("basis" in body and "action" in body, path, 'needs "basis" and "action"')
    space = _parse_basis(body["basis"], f"{path}.basis")
    L = ws.algebra
    act: dict[tuple[int, int], Vector] = {}
    for key, val in _as_dict(body["action"], f"{path}.action").items():
        parts = key.split(",")
        _expect(len(parts) == 2, f"{path}.action[{key!r}]", 'keys look like "x,m"')
        i = _label_index(L.basis, parts[0], f"{path}.action[{key!r}]")
        j = _label_index(space, parts[1], f"{path}.action[{key!r}]")
        _expect((i, j) not in act, f"{path}.action[{key!r}]", "duplicate action entry")
        vec = _parse_vector(ws.spec, space, val, f"{path}.action[{key!r}]")
        if not vec.is_zero():
            act[(i, j)] = vec
    module = LModule(L.basis, space, act)
    report = validate_module(L, module)
    if not report.ok:
        raise ValidationError(f"{path}: {report.describe()}")
    rep_m = None
    if ws.group is not None:
        _expect(
            "matrices" in body,
            path,
            'a workspace with a group needs "matrices" giving the action on the module',
        )
        rep_m = _parse_action(ws.spec, ws.group, space, body["matrices"], f"{path}.matrices")
        pair = validate_module_action(ws.rep, rep_m, L, module)
        if not pair.ok:
            raise ValidationError(f"{path}: {pair.describe()}")
    else:
        _expect("matrices" not in body, path, '"matrices" given but the workspace has no group')
    return ModuleEntry(module, rep_m)


def _parse_cochain(ws: Workspace, name: str, raw) -> CochainEntry:
    path = f"cochains.{name}"
    body = _as_dict(raw, path)
    allowed = {"arity", "parity", "module", "coords"}
    _expect(set(body) <= allowed, path, f"unknown keys {sorted(set(body) - allowed)}")
    for key in ("arity", "parity", "coords"):
        _expect(key in body, path, f'needs "{key}"')
    arity, parity = body["arity"], body["parity"]
    _expect(isinstance(arity, int) and arity >= 0, f"{path}.arity", "expected an integer >= 0")
    _expect(parity in (0, 1), f"{path}.parity", "expected 0 or 1")
    module_name = body.get("module", ADJOINT)
    _expect(isinstance(module_name, str), f"{path}.module", "expected a module name")
    module, _ = ws.resolve_module(module_name)
    L = ws.algebra
    coords: dict[tuple[tuple[int, ...], int], Scalar] = {}
    for key, val in _as_dict(body["coords"], f"{path}.coords").items():
        kpath = f"{path}.coords[{key!r}]"
        _expect(key.count("|") == 1, kpath, 'keys look like "args|target"')
        args_part, target = key.split("|")
        labels = args_part.split(",") if args_part else []
        _expect(len(labels) == arity, kpath, f"expected {arity} argument labels")
        T = tuple(_label_index(L.basis, lab, kpath) for lab in labels)
        j = _label_index(module.space, target, kpath)
        _expect((T, j) not in coords, kpath, "duplicate coordinate")
        coords[(T, j)] = _scalar(ws.spec, val, kpath)
    try:
        cochain = Cochain(arity, parity, L.basis, module.space, coords)
    except (ValueError, ValidationError) as exc:
        raise ValidationError(f"{path}: {exc}") from exc
    return CochainEntry(cochain, module_name)


def _parse_deformation(ws: Workspace, name: str, raw) -> tuple[str, ...]:
    path = f"deformations.{name}"
    body = _as_dict(raw, path)
    _expect(set(body) == {"terms"}, path, 'expected exactly one key, "terms"')
    terms = _as_list(body["terms"], f"{path}.terms")
    _expect(len(terms) >= 1, f"{path}.terms", "at least the order-0 term is needed")
    for k, term in enumerate(terms):
        tpath = f"{path}.terms[{k}]"
        _expect(isinstance(term, str), tpath, "expected a cochain name")
        if term == BRACKET_TERM:
            continue
        entry = ws.cochains.get(term)
        if entry is None:
            raise ParseError(f"{tpath}: unknown cochain {term!r}")
        _expect(entry.module == ADJOINT, tpath, "deformation terms must be adjoint-valued")
    return tuple(terms)


def parse(text: str) -> Workspace:
    """Parse the JSON text of a workspace file, validating everything."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    body = _as_dict(doc, "top level")
    unknown = set(body) - _TOP_KEYS
    _expect(not unknown, "top level", f"unknown keys {sorted(unknown)}")
    _expect("field" in body, "top level", 'needs "field"')
    _expect("algebra" in body, "top level", 'needs "algebra"')

    spec = _parse_field(body["field"])
    alg = _as_dict(body["algebra"], "algebra")
    _expect(set(alg) <= {"basis", "brackets"}, "algebra", f"unknown keys {sorted(set(alg) - {'basis', 'brackets'})}")
    _expect("basis" in alg and "brackets" in alg, "algebra", 'needs "basis" and "brackets"')
    basis = _parse_basis(alg["basis"], "algebra.basis")
    bracket = _parse_brackets(spec, basis, alg["brackets"], "algebra.brackets")
    try:
        algebra = LieSuperalgebra(basis, spec, bracket)
    except ValidationError as exc:
        raise ValidationError(f"algebra: {exc}") from exc

    ws = Workspace(spec, algebra)

    if "group" in body:
        ws.group = _parse_group(body["group"])
        _expect("action" in body, "top level", 'a workspace with a "group" needs an "action"')
        ws.rep = _parse_action(spec, ws.group, basis, body["action"], "action")
        report = validate_action(ws.rep, algebra)
        if not report.ok:
            raise ValidationError(f"action: {report.describe()}")
    else:
        _expect("action" not in body, "top level", '"action" given but no "group"')

    for name in sorted(_as_dict(body.get("modules", {}), "modules")):
        _expect(name != ADJOINT, f"modules.{name}", f"{ADJOINT!r} is reserved for the algebra itself")
        ws.modules[name] = _parse_module(ws, name, body["modules"][name])

    for name in sorted(_as_dict(body.get("cochains", {}), "cochains")):
        _expect(name != BRACKET_TERM, f"cochains.{name}", f"{BRACKET_TERM!r} is reserved")
        ws.cochains[name] = _parse_cochain(ws, name, body["cochains"][name])

    for name in sorted(_as_dict(body.get("deformations", {}), "deformations")):
        ws.deformations[name] = _parse_deformation(ws, name, body["deformations"][name])
        try:
            ws.deformation(name)  # eager: bad leading term or equivariance fails here
        except ValidationError as exc:
            raise ValidationError(f"deformations.{name}: {exc}") from exc

    return ws


def _field_doc(spec: FieldSpec):
    if spec.kind == "rational":
        return "rational"
    return {"cyclotomic": spec.conductor}


def _basis_doc(basis: GradedBasis) -> list:
    return [[name, parity] for name, parity in zip(basis.names, basis.parities)]


def _vector_doc(space: GradedBasis, vec: Vector) -> dict:
    return {space.names[j]: serialize_scalar(c) for j, c in sorted(vec.coords.items())}


def _brackets_doc(L: LieSuperalgebra) -> dict:
    names = L.basis.names
    out = {}
    for (i, j), vec in L.bracket.components.items():
        if i > j or vec.is_zero():
            continue
        out[f"{names[i]},{names[j]}"] = _vector_doc(L.basis, vec)
    return out


def _matrix_doc(mat) -> list:
    return [[serialize_scalar(c) for c in row] for row in mat]


def _cochain_doc(ws: Workspace, entry: CochainEntry) -> dict:
    f = entry.cochain
    names = ws.algebra.basis.names
    module, _ = ws.resolve_module(entry.module)
    coords = {}
    for (T, j), c in f.coords.items():
        key = ",".join(names[i] for i in T) + "|" + module.space.names[j]
        coords[key] = serialize_scalar(c)
    return {"arity": f.arity, "parity": f.parity, "module": entry.module, "coords": coords}


def serialize(ws: Workspace) -> str:
    """Canonical JSON text; ``parse`` reproduces the workspace exactly."""
    doc = {
        "field": _field_doc(ws.spec),
        "algebra": {
            "basis": _basis_doc(ws.algebra.basis),
            "brackets": _brackets_doc(ws.algebra),
        },
    }
    if ws.group is not None:
        doc["group"] = {
            "table": [list(row) for row in ws.group.table],
            "identity": ws.group.identity,
        }
        doc["action"] = [_matrix_doc(m) for m in ws.rep.matrices]
    if ws.modules:
        doc["modules"] = {}
        for name, entry in sorted(ws.modules.items()):
            names = ws.algebra.basis.names
            space = entry.module.space
            action = {
                f"{names[i]},{space.names[j]}": _vector_doc(space, vec)
                for (i, j), vec in sorted(entry.module.act.items())
                if not vec.is_zero()
            }
            mod_doc = {"basis": _basis_doc(space), "action": action}
            if entry.rep is not None:
                mod_doc["matrices"] = [_matrix_doc(m) for m in entry.rep.matrices]
            doc["modules"][name] = mod_doc
    if ws.cochains:
        doc["cochains"] = {
            name: _cochain_doc(ws, entry) for name, entry in sorted(ws.cochains.items())
        }
    if ws.deformations:
        doc["deformations"] = {
            name: {"terms": list(terms)} for name, terms in sorted(ws.deformations.items())
        }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load(path: str) -> Workspace:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def save(ws: Workspace, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(ws))
