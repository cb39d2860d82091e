// Copyright 2026 The phasegbs Authors
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

#ifndef PHASEGBS_RNG_HPP_
#define PHASEGBS_RNG_HPP_

#include <cstdint>
#include <random>

namespace phasegbs {

using Engine = std::mt19937_64;

// Seed of substream `stream` under `seed`: two SplitMix64 rounds, so that
// neighbouring (seed, stream) pairs give unrelated engines.
std::uint64_t StreamSeed(std::uint64_t seed, std::uint64_t stream);

inline Engine MakeStream(std::uint64_t seed, std::uint64_t stream) {
  return Engine(StreamSeed(seed, stream));
}

}  // namespace phasegbs

#endif  // PHASEGBS_RNG_HPP_
