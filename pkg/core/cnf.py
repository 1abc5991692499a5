#!/usr/bin/env python3
"""
TARKit CNF 实例
DIMACS 解析、赋值、可满足赋值枚举、随机实例。
每个子句必须恰好含三个不同的文字（x 与 ¬x 算不同文字）。
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import BudgetExceededError, CnfParseError, PreconditionError

logger = logging.getLogger(__name__)

# enumerate_satisfying 的变量数上限
MAX_ENUMERATION_VARS = 20


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    positive: bool = True

    @classmethod
    def from_int(cls, value: int) -> "Literal":
        if value == 0:
            raise ValueError("0 is not a literal")
        return cls(abs(value), value > 0)

    def to_int(self) -> int:
        return self.var if self.positive else -self.var

    def __neg__(self) -> "Literal":
        return Literal(self.var, not self.positive)

    def __str__(self) -> str:
        return f"x{self.var}" if self.positive else f"¬x{self.var}"


Clause = Tuple[Literal, Literal, Literal]


@dataclass(frozen=True)
class Assignment:
    """values[i] 是变量 i+1 的取值"""
    values: Tuple[bool, ...]

    @property
    def num_vars(self) -> int:
        return len(self.values)

    def value(self, var: int) -> bool:
        return self.values[var - 1]

    def satisfies_literal(self, lit: Literal) -> bool:
        return self.value(lit.var) == lit.positive

    @classmethod
    def parse(cls, text: str) -> "Assignment":
        """'TFF' / '100' / 'true,false' 形式"""
        tokens = [t for t in text.replace(",", " ").split()] if ("," in text or " " in text) else list(text.strip())
        values = []
        for token in tokens:
            low = token.lower()
            if low in ("t", "1", "true"):
                values.append(True)
            elif low in ("f", "0", "false"):
                values.append(False)
            else:
                raise ValueError(f"cannot read {token!r} as a truth value")
        return cls(tuple(values))

    def bits(self) -> str:
        return "".join("T" if v else "F" for v in self.values)

    def __str__(self) -> str:
        return self.bits()


@dataclass(frozen=True)
class SatInstance:
    num_vars: int
    clauses: Tuple[Clause, ...]

    def __post_init__(self):
        if self.num_vars < 1:
            raise PreconditionError("an instance needs at least one variable", {"num_vars": self.num_vars})
        for j, clause in enumerate(self.clauses, start=1):
            _check_clause(clause, self.num_vars, j)

    @property
    def m(self) -> int:
        return len(self.clauses)

    def satisfied_by(self, a: Assignment) -> bool:
        if a.num_vars != self.num_vars:
            return False
        return all(any(a.satisfies_literal(lit) for lit in clause) for clause in self.clauses)

    def unsatisfied_clauses(self, a: Assignment) -> List[int]:
        """未满足子句的编号（从 1 开始）"""
        return [j for j, clause in enumerate(self.clauses, start=1)
                if not any(a.satisfies_literal(lit) for lit in clause)]

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.num_vars} {self.m}"]
        lines.extend(" ".join(str(lit.to_int()) for lit in clause) + " 0" for clause in self.clauses)
        return "\n".join(lines) + "\n"

    @classmethod
    def of(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "SatInstance":
        """由整数文字构造，如 SatInstance.of(3, [[1, 2, -3]])"""
        return cls(num_vars, tuple(tuple(Literal.from_int(v) for v in c) for c in clauses))


def _check_clause(clause: Sequence[Literal], num_vars: int, index: int, line: Optional[int] = None) -> None:
    rendered = " ".join(str(lit.to_int()) for lit in clause)
    if len(clause) != 3:
        raise CnfParseError(f"clause {index} ({rendered}) has {len(clause)} literals, expected exactly 3",
                            line, {"clause": index})
    if len(set(clause)) != 3:
        raise CnfParseError(f"clause {index} ({rendered}) repeats a literal", line, {"clause": index})
    for lit in clause:
        if not 1 <= lit.var <= num_vars:
            raise CnfParseError(f"clause {index} uses variable {lit.var} outside 1..{num_vars}",
                                line, {"clause": index})


def parse_cnf(text: str) -> SatInstance:
    """
    解析 DIMACS CNF。
    - 'c' 开头为注释，'%' 结束输入
    - 子句可以跨行，以 0 结束
    - 子句数必须与 p 行一致
    """
    header: Optional[Tuple[int, int]] = None
    clauses: List[Clause] = []
    pending: List[Literal] = []
    pending_line: Optional[int] = None
    last_line = 0

    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise CnfParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfParseError(f"invalid problem line: {line}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfParseError(f"invalid problem line: {line}", lineno) from None
            if header[0] < 1 or header[1] < 0:
                raise CnfParseError(f"invalid problem line: {line}", lineno)
            continue
        if header is None:
            raise CnfParseError("clause before the problem line", lineno)
        for token in line.split():
            try:
                value = int(token)
            except ValueError:
                raise CnfParseError(f"not an integer literal: {token!r}", lineno) from None
            if value == 0:
                _check_clause(pending, header[0], len(clauses) + 1, pending_line or lineno)
                clauses.append(tuple(pending))
                pending, pending_line = [], None
                continue
            if pending_line is None:
                pending_line = lineno
            pending.append(Literal.from_int(value))

    if header is None:
        raise CnfParseError("missing problem line 'p cnf <vars> <clauses>'", last_line or None)
    if pending:
        raise CnfParseError("last clause is not terminated by 0", pending_line)
    if len(clauses) != header[1]:
        raise CnfParseError(f"problem line declares {header[1]} clauses, found {len(clauses)}", last_line,
                            {"declared": header[1], "found": len(clauses)})
    logger.debug("parsed CNF with %d variables and %d clauses", header[0], len(clauses))
    return SatInstance(header[0], tuple(clauses))


def load_cnf(path: str) -> SatInstance:
    with open(path, "r", encoding="utf-8") as f:
        return parse_cnf(f.read())


def enumerate_satisfying(f: SatInstance) -> Iterator[Assignment]:
    """按字典序（F < T）枚举全部可满足赋值"""
    if f.num_vars > MAX_ENUMERATION_VARS:
        raise BudgetExceededError(f"refusing to enumerate 2^{f.num_vars} assignments",
                                  {"num_vars": f.num_vars, "limit": MAX_ENUMERATION_VARS})
    for values in itertools.product((False, True), repeat=f.num_vars):
        a = Assignment(values)
        if f.satisfied_by(a):
            yield a


def random_instance(n: int, m: int, seed: int) -> SatInstance:
    """n 个变量、m 个子句，每个子句从 2n 个文字中无放回取 3 个"""
    if n < 2:
        raise PreconditionError("three different literals need at least two variables", {"n": n})
    if m < 0:
        raise PreconditionError("clause count must be non-negative", {"m": m})
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(m):
        picks = rng.choice(2 * n, size=3, replace=False)
        clauses.append(tuple(Literal(int(p) // 2 + 1, int(p) % 2 == 0) for p in picks))
    return SatInstance(n, tuple(clauses))
