"""Pydantic schema of one command-line invocation."""

from typing import Literal

from pydantic import BaseModel, model_validator

Command = Literal["bounds", "params", "verify", "enumerate", "certificate", "rho0", "suite", "serve"]

_NEEDS_INPUT = {"bounds", "params"}
_NEEDS_N = {"verify", "enumerate", "suite"}


class CliConfig(BaseModel):
    command: Command
    input: str | None = None
    input_kind: Literal["graph6", "edges", "profile"] = "graph6"
    n: int | None = None
    n_from: int | None = None
    n_to: int | None = None
    k_max: int | None = None
    space: Literal["all", "staircase"] = "staircase"
    general: bool = False
    allow_large: bool = False
    format: Literal["json", "csv", "text"] = "text"
    parallel: int | None = None
    out: str | None = None
    port: int | None = None

    @model_validator(mode="after")
    def _inputs_match_command(self) -> "CliConfig":
        if self.command in _NEEDS_INPUT:
            if self.input is None or self.n is not None:
                raise ValueError(f"{self.command} takes a graph or profile input and no --n")
        elif self.input is not None:
            raise ValueError(f"{self.command} takes no graph or profile input")
        if self.command in _NEEDS_N and self.n is None:
            raise ValueError(f"{self.command} needs --n")
        if self.command == "certificate" and self.k_max is None:
            raise ValueError("certificate needs --k-max")
        if self.command == "rho0":
            if self.n is None and (self.n_from is None or self.n_to is None):
                raise ValueError("rho0 needs --n or both --from and --to")
            if self.n is not None and (self.n_from is not None or self.n_to is not None):
                raise ValueError("rho0 takes --n or a --from/--to range, not both")
        if self.parallel is not None and self.parallel < 1:
            raise ValueError("--parallel must be at least 1")
        return self
