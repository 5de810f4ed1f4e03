// Regenerates the frozen extension-field moduli table (lex-smallest monic
// primitive polynomial per (p, k)) and prints it as C++ initializer rows.
// The output is pasted into src/field.cpp; a unit test keeps the two in sync.

#include "cbws/field.hpp"

#include <cstdio>

int main() {
    for (uint32_t p : {2u, 3u, 5u, 7u}) {
        for (uint32_t k = 2; k <= cbws::kMaxExtensionDegree; ++k) {
            auto m = cbws::FieldCtx::derive_table_modulus(p, k);
            std::printf("    {%u, %u, {", p, k);
            for (size_t i = 0; i < m.size(); ++i)
                std::printf("%s%u", i ? ", " : "", m[i]);
            std::printf("}},\n");
            std::fflush(stdout);
        }
    }
    return 0;
}
