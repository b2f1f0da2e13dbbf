// Copyright 2026 The cilvr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace cilvr {

/// Constant-parameter GBM environment: dS/S = r dt + sigma dB under the pricing measure.
struct MarketParams {
    double r = 0.0;      ///< annual risk-free rate
    double sigma = 0.0;  ///< annual volatility

    /// Throws DomainError unless sigma > 0 and r >= 0.
    void validate() const;
};

}  // namespace cilvr
