# Copyright 2026 The p1h Authors
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

"""Naive homotopy classes of rational functions over Q and F_p."""

from ._core import (
    P1hError,
    RatFun,
    certify,
    classify,
    equiv,
    oracle,
    pd_certify,
    pd_equiv,
    verify,
)

__all__ = [
    "P1hError",
    "RatFun",
    "certify",
    "classify",
    "equiv",
    "oracle",
    "pd_certify",
    "pd_equiv",
    "verify",
]
