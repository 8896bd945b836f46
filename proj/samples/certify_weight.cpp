/*
   Copyright 2026 The siegel-image Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Prints, for one weight, every prime ell < 504 at which the residual image
// is not certified full, together with the reason.
//
//   certify_weight 4 10

#include <cstdlib>
#include <iostream>

#include "siegel/imgsieve.hpp"

int main(int argc, char** argv) {
    if (argc != 3) {
        std::cerr << "usage: certify_weight j k\n";
        return 2;
    }
    const siegel::FormWeight weight(std::atoi(argv[1]), std::atoi(argv[2]));
    const auto& traces = siegel::TraceTable::embedded();

    for (const auto& cert : siegel::certify_range(traces, weight, 503)) {
        if (cert.verdict == siegel::Verdict::full_image) continue;
        std::cout << "ell = " << cert.ell << ": " << siegel::verdict_name(cert.verdict);
        if (cert.failed_case) std::cout << ", case " << siegel::case_id(*cert.failed_case);
        std::cout << '\n';
    }
}
