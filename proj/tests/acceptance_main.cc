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


// Acceptance suite: one PASS/FAIL line per criterion. Optional arguments
// restrict the run to the given criterion numbers.

#include <cstdlib>
#include <iostream>

#include "phasegbs/acceptance.hpp"

int main(int argc, char** argv) {
  phasegbs::AcceptanceOptions opt;
  for (int i = 1; i < argc; ++i) opt.only.insert(std::atoi(argv[i]));
  auto lines = phasegbs::RunAcceptance(opt, std::cout);
  int failed = 0;
  for (const auto& l : lines) failed += l.pass ? 0 : 1;
  std::cout << (failed ? "FAIL" : "PASS") << " [all] " << lines.size() - failed << "/"
            << lines.size() << " lines pass\n";
  return failed ? 1 : 0;
}
