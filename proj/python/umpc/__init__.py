# Copyright 2026 The umpc Authors
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

"""Secure multi-party U-statistics with distributed noise."""

from umpc._umpc import (
    DomainError,
    ParseError,
    RangeError,
    SamplingFailure,
    ScaleError,
    UmpcError,
    UnsupportedKernel,
    UsageError,
    WrapRiskError,
    bell_estimate,
    cli,
    complete_ustat,
    decode,
    encode,
    incomplete_ustat,
    kernels,
    max_degree,
    reconstruct,
    run,
    sample_graph,
    share,
)

__all__ = [name for name in dir() if not name.startswith("_")]
