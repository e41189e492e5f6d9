"""Global enumeration bounds and run configuration.

Everything in this package is an exhaustive, exact computation; the bounds
below decide when a sweep is refused rather than attempted.  They can be
overridden per call or from the command line.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class RunConfig:
    max_field: int = 10**7      # largest field we will enumerate or tabulate
    max_group: int = 10**5      # largest group we will enumerate
    max_closure: int = 10**4    # abort generator closures above this size
    workers: int = 1            # partition count for partitionable sweeps
    output_format: str = "json"  # "json" or "tsv"

    def with_(self, **kw) -> "RunConfig":
        return replace(self, **kw)


DEFAULT = RunConfig()
