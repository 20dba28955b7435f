# Copyright 2026 The sicsched Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------
"""Opportunistic scheduling under interference: closed forms and Monte Carlo."""

from ._core import (
    CoefficientsUnavailable,
    ConfigError,
    Error,
    IoError,
    MevCoefficients,
    SolverError,
    SystemConfig,
    coefficient_table,
    default_analytic_kind,
    estimate_mean_sum_capacity,
    estimate_top,
    figure_ids,
    fit_scaling_exponent,
    mev_coefficients,
    outage_cdf,
    run_figure,
    run_table,
    schedule,
    solve_target_beta,
    table_ids,
    top_bound,
    users_required_curve,
    validate,
)

__all__ = [name for name in dir() if not name.startswith("_")]
