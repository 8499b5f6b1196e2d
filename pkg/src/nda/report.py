"""Law verdicts and their JSON / CSV / markdown serializations."""

import csv
import io
import json
from dataclasses import asdict, dataclass, field

COLUMNS = ("law_id", "gen", "bound", "holds", "witness", "notes")


@dataclass(frozen=True)
class LawVerdict:
    """Outcome of one bounded law check.

    ``witness`` is empty when the law holds and never empty when it fails;
    substituting it back into the law's defining equation reproduces the
    violation (see ``nda.laws.recheck``).
    """

    law_id: str
    gen: str
    bound: int
    holds: bool
    witness: tuple = ()
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "witness", tuple(self.witness))
        if not self.holds and not self.witness:
            raise ValueError(f"failing verdict for {self.law_id} has no witness")

    def to_dict(self):
        d = asdict(self)
        d["witness"] = list(self.witness)
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(
            law_id=d["law_id"],
            gen=d["gen"],
            bound=int(d["bound"]),
            holds=bool(d["holds"]),
            witness=tuple(int(x) for x in d.get("witness", ())),
            notes=d.get("notes", ""),
        )


def verdicts_to_json(verdicts, indent=2):
    return json.dumps([v.to_dict() for v in verdicts], indent=indent, ensure_ascii=False)


def verdicts_from_json(text):
    return [LawVerdict.from_dict(d) for d in json.loads(text)]


def verdicts_to_csv(verdicts):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for v in verdicts:
        w.writerow([v.law_id, v.gen, v.bound, "true" if v.holds else "false",
                    " ".join(str(x) for x in v.witness), v.notes])
    return buf.getvalue()


def verdicts_from_csv(text):
    rows = csv.DictReader(io.StringIO(text))
    out = []
    for row in rows:
        out.append(LawVerdict(
            law_id=row["law_id"],
            gen=row["gen"],
            bound=int(row["bound"]),
            holds=row["holds"] == "true",
            witness=tuple(int(x) for x in row["witness"].split()),
            notes=row["notes"],
        ))
    return out


def _md_escape(text):
    return str(text).replace("|", "\\|").replace("\n", " ")


def markdown_table(header, rows):
    lines = ["| " + " | ".join(_md_escape(h) for h in header) + " |",
             "|" + "|".join("---" for _ in header) + "|"]
    for row in rows:
        lines.append("| " + " | ".join(_md_escape(c) for c in row) + " |")
    return "\n".join(lines) + "\n"


def verdicts_to_markdown(verdicts):
    rows = []
    for v in verdicts:
        witness = "(" + ", ".join(str(x) for x in v.witness) + ")" if v.witness else ""
        rows.append([v.law_id, v.gen, v.bound, "holds" if v.holds else "FAILS",
                     witness, v.notes])
    return markdown_table(COLUMNS, rows)


@dataclass(frozen=True)
class OperationTable:
    """Cell ``rows[a][b]`` is ``op(a, b)`` for ``0 <= a, b <= bound``."""

    gen: str
    op: str
    bound: int
    rows: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    def to_dict(self):
        return {"gen": self.gen, "op": self.op, "bound": self.bound,
                "rows": [list(r) for r in self.rows]}

    @classmethod
    def from_dict(cls, d):
        return cls(gen=d["gen"], op=d["op"], bound=int(d["bound"]),
                   rows=tuple(tuple(int(x) for x in r) for r in d["rows"]))

    def to_json(self, indent=None):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([self.op] + list(range(self.bound + 1)))
        for a, row in enumerate(self.rows):
            w.writerow([a] + list(row))
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text, gen, op=None):
        reader = list(csv.reader(io.StringIO(text)))
        header, body = reader[0], reader[1:]
        rows = tuple(tuple(int(x) for x in r[1:]) for r in body)
        return cls(gen=gen, op=op or header[0], bound=len(rows) - 1, rows=rows)

    def to_markdown(self):
        symbol = {"add": "+", "mul": "*"}.get(self.op, self.op)
        header = [symbol] + list(range(self.bound + 1))
        return markdown_table(header, [[a] + list(r) for a, r in enumerate(self.rows)])
