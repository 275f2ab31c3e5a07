from typing import Optional

import pandas as pd

from src.models.anneal import AnnealTrace, TRACE_COLUMNS
from src.models.pattern import MeasurementPattern
from src.models.problem import Method, ProblemSpec
from src.models.resource import AnticommutationData, CompiledResource
from src.models.rotation import RotationSequence
from src.models.tableau import StabilizerTableau
from src.tools.serialization import SimpleDict


class CompilationResult:
    def __init__(
        self,
        problem: ProblemSpec,
        method: Method,
        sequence: RotationSequence,
        resource: CompiledResource,
        pattern: MeasurementPattern,
        anticommutation: AnticommutationData,
        resource_tableau: StabilizerTableau,
        traces: Optional[list[AnnealTrace]] = None,
    ) -> None:
        self._problem = problem
        self._method = method
        self._sequence = sequence
        self._resource = resource
        self._pattern = pattern
        self._anticommutation = anticommutation
        self._resource_tableau = resource_tableau
        self._traces = list(traces or [])

        self._validate()

    def _validate(self) -> None:
        assert (
            self._sequence.m == self._resource.m == self._pattern.m
        ), f"Sequence ({self._sequence.m}), resource ({self._resource.m}) and pattern ({self._pattern.m}) disagree on M"
        assert self._resource_tableau.n == self._resource.n, "Resource tableau width does not match the resource"
        assert (self._method is Method.AC) == self._resource.is_ac, "Only AC resources carry a ladder"

    def __str__(self) -> str:
        return f"<{self.__class__.__name__} {self._problem.name} {self._method.value} {self._resource}>"

    def __repr__(self) -> str:
        return self.__str__()

    @property
    def problem(self) -> ProblemSpec:
        return self._problem

    @property
    def method(self) -> Method:
        return self._method

    @property
    def sequence(self) -> RotationSequence:
        """
        :return: The rotation sequence in the original frame, K periods long
        """
        return self._sequence

    @property
    def resource(self) -> CompiledResource:
        return self._resource

    @property
    def pattern(self) -> MeasurementPattern:
        return self._pattern

    @property
    def anticommutation(self) -> AnticommutationData:
        return self._anticommutation

    @property
    def resource_tableau(self) -> StabilizerTableau:
        """
        :return: Stabilizer generators the prepared resource must have, in the original frame
        """
        return self._resource_tableau

    @property
    def traces(self) -> list[AnnealTrace]:
        return list(self._traces)

    @property
    def traces_frame(self) -> pd.DataFrame:
        """
        :return: DataFrame with
        * Columns: run, then iteration, W, Pi, f
        * One row per accepted annealing move of every run
        """
        frames = [t.steps[TRACE_COLUMNS].assign(run=k) for k, t in enumerate(self._traces)]
        if not frames:
            return pd.DataFrame(columns=["run"] + TRACE_COLUMNS)
        return pd.concat(frames, ignore_index=True)[["run"] + TRACE_COLUMNS]

    def to_simple_dict(self) -> SimpleDict:
        return {
            "problem": self._problem.name,
            "method": self._method.value,
            "sequence": self._sequence.to_simple_dict(),
            "resource": self._resource.to_simple_dict(),
            "pattern": self._pattern.to_simple_dict(),
        }
