"""Pydantic schemas for verification sweeps, property suites and certificates."""

from typing import Literal

from pydantic import BaseModel

from ngbound.models.matrix import DenseMatrix, Polynomial


class VerifyReport(BaseModel):
    n: int
    search_space: Literal["all_graphs", "staircase_sym"]
    max_value: float
    arg_max: list[str]
    expected_arg_max: list[str]
    rho0_expected: float
    gap: float
    counterexamples: list[str]
    instances_checked: int
    cross_check_max: float | None = None
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.counterexamples


class PropertyCheck(BaseModel):
    name: str
    passed: bool
    instances: int
    first_failure: str | None = None
    notes: str | None = None


class SuiteReport(BaseModel):
    n_max: int
    checks: list[PropertyCheck]
    elapsed: float

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class FinalCaseInstance(BaseModel):
    k: int
    s: int
    a: int
    M1: DenseMatrix
    M2: DenseMatrix
    M: DenseMatrix
    h: Polynomial
    det_at_4k1: float


class CertificateFailure(BaseModel):
    k: int
    s: int
    a: int
    check: str
    margin: float


class CertificateRow(BaseModel):
    """Per-k summary line."""

    k: int
    instances: int
    expected_instances: int
    failures: int
    thin: int
    min_margin: float


class CertificateReport(BaseModel):
    k_max: int
    rows: list[CertificateRow]
    failures: list[CertificateFailure]
    elapsed: float

    @property
    def passed(self) -> bool:
        return not self.failures and all(r.instances == r.expected_instances for r in self.rows)


class RootedBoundReport(BaseModel):
    n: int
    mu: list[int]
    final_case_shape: bool
    k: int | None = None
    s: int
    a: int
    first_block_sum: int
    M3: DenseMatrix
    M2: DenseMatrix | None = None
    rho_bar: float
    rho_r_M3: float
    rho_r_M2: float | None = None
    hypothesis_violations: list[str]
    matches_final_case_m2: bool | None = None
    chain_holds: bool
