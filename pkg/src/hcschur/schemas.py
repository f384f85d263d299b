"""Request and report models shared by the HTTP service and the CLI."""
from __future__ import annotations

from typing import Any, Literal, Optional

from pydantic import BaseModel, Field

COMMANDS = {
    "schur": ("compute", "verify"),
    "criteria": ("check", "scan"),
    "algebra": ("gram", "semisimple", "gimel", "forms"),
    "combinatorics": ("enum",),
}


class Params(BaseModel):
    """Flags common to every command; each command validates the ones it uses."""

    kind: Optional[str] = None
    n: Optional[str] = Field(None, description="an integer or a range a..b")
    m: Optional[int] = None
    lam: Optional[str] = Field(None, alias="lambda", description="multipartition, e.g. 's,1: (2,1)|(1)'")
    family: Optional[str] = None
    e: Optional[str] = Field(None, description="an integer or a range a..b")
    weight: Optional[str] = None
    spec: Optional[str] = Field(None, description="q=...,Q1=...; rationals, zetaN^k, xi*zetaN^k or c*q^k")
    form: Literal["t", "tau"] = "t"
    path: Optional[str] = None
    seed: int = 0
    jobs: int = 1

    model_config = {"populate_by_name": True}


class Report(BaseModel):
    """One command's output.  ``ok`` is False exactly when a verification failed."""

    command: str
    ok: bool
    params: dict[str, Any] = Field(default_factory=dict)
    summary: dict[str, Any] = Field(default_factory=dict)
    records: list[dict[str, Any]] = Field(default_factory=list)
    counterexamples: list[dict[str, Any]] = Field(default_factory=list)
    matrix: Optional[list[list[str]]] = None
    notes: list[str] = Field(default_factory=list)


class ErrorReport(BaseModel):
    command: str
    error: str
