#include "kernels_internal.hpp"

#include <cstdlib>
#include <string>

namespace paramosc::simd {

std::string_view isa_name(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    case Isa::neon:
        return "neon";
    }
    return "unknown";
}

const KernelTable* kernels_for(Isa isa)
{
    switch (isa) {
    case Isa::scalar:
        return &scalar_kernels();
    case Isa::avx2:
#if defined(PARAMOSC_HAVE_AVX2)
        if (__builtin_cpu_supports("avx2")) {
            return &detail::avx2_table();
        }
#endif
        return nullptr;
    case Isa::neon:
#if defined(PARAMOSC_HAVE_NEON)
        return &detail::neon_table();
#else
        return nullptr;
#endif
    }
    return nullptr;
}

std::vector<Isa> available_isas()
{
    std::vector<Isa> out;
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
        if (kernels_for(isa) != nullptr) {
            out.push_back(isa);
        }
    }
    return out;
}

namespace {

const KernelTable& select()
{
    if (const char* env = std::getenv("PARAMOSC_ISA")) {
        const std::string want(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
            if (want == isa_name(isa)) {
                if (const KernelTable* t = kernels_for(isa)) {
                    return *t;
                }
            }
        }
    }
    for (Isa isa : {Isa::avx2, Isa::neon}) {
        if (const KernelTable* t = kernels_for(isa)) {
            return *t;
        }
    }
    return scalar_kernels();
}

} // namespace

const KernelTable& kernels()
{
    static const KernelTable& chosen = select();
    return chosen;
}

} // namespace paramosc::simd
