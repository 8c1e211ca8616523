# Copyright 2026 The lpgmfg Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Graphon mean field games on sparse networks."""

from lpgmfg._core import (
    Config,
    ConfigError,
    DomainError,
    Environment,
    Error,
    Graphon,
    GraphSample,
    ParameterError,
    ShapeError,
    TransitionError,
    cut_norm_estimate,
    discretize,
    exploitability,
    mean_field,
    read_edge_list,
    run,
    sample_graph,
    solve,
    sweep,
)

__all__ = [
    "Config",
    "ConfigError",
    "DomainError",
    "Environment",
    "Error",
    "Graphon",
    "GraphSample",
    "ParameterError",
    "ShapeError",
    "TransitionError",
    "cut_norm_estimate",
    "discretize",
    "exploitability",
    "mean_field",
    "read_edge_list",
    "run",
    "sample_graph",
    "solve",
    "sweep",
]
