// Copyright 2026 The qst Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <string>

#include "qst/error.hpp"
#include "qst/kernels.hpp"

namespace qst::kernels {
namespace {

const KernelTable* pick_default() {
  if (const char* env = std::getenv("QST_KERNELS")) {
    if (std::string(env) == "scalar") return &scalar_table();
  }
  if (cpu_supports_avx2() && avx2_table() != nullptr) return avx2_table();
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{pick_default()};
  return current;
}

}  // namespace

bool cpu_supports_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (isa == Isa::kScalar) {
    slot().store(&scalar_table());
    return;
  }
  if (!cpu_supports_avx2() || avx2_table() == nullptr) {
    throw Error(ErrorKind::kInvalidArgument,
                "AVX2 kernels are not available on this machine");
  }
  slot().store(avx2_table());
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace qst::kernels
