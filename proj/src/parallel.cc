// Copyright 2026 The refalign Authors
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

#include "refalign/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace refalign {

namespace {
#ifdef _OPENMP
const int kDefaultWorkers = omp_get_max_threads();
#endif
}  // namespace

void set_worker_count(int workers) {
#ifdef _OPENMP
    omp_set_num_threads(workers < 1 ? kDefaultWorkers : workers);
#else
    (void)workers;
#endif
}

int worker_count() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace refalign
