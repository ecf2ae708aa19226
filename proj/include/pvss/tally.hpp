#pragma once

#include <cstdint>

namespace pvss {

// Operation counters for the cost profiler: modular exponentiations,
// inversions mod q, and masking XORs.
struct OpTally {
    std::uint64_t exps = 0;
    std::uint64_t invs = 0;
    std::uint64_t xors = 0;

    OpTally& operator+=(const OpTally& o) {
        exps += o.exps;
        invs += o.invs;
        xors += o.xors;
        return *this;
    }
};

namespace detail {
inline thread_local OpTally* active_tally = nullptr;
}

// Routes group-operation counts into `sink` for the current thread while alive.
class TallyScope {
public:
    explicit TallyScope(OpTally& sink) : prev_(detail::active_tally) { detail::active_tally = &sink; }
    ~TallyScope() { detail::active_tally = prev_; }
    TallyScope(const TallyScope&) = delete;
    TallyScope& operator=(const TallyScope&) = delete;

private:
    OpTally* prev_;
};

inline void count_exp() {
    if (detail::active_tally) ++detail::active_tally->exps;
}
inline void count_inv() {
    if (detail::active_tally) ++detail::active_tally->invs;
}
inline void count_xor() {
    if (detail::active_tally) ++detail::active_tally->xors;
}

}  // namespace pvss
