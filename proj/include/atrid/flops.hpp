#pragma once

#include <cstdint>
#include <utility>

namespace atrid::flops {

/// Arithmetic-operation counter. Convention: one count per executed
/// floating add/sub, mul, or div; negation, copies, and power-of-two
/// exponent adjustments (frexp/ldexp) are free.
struct Counter {
    std::int64_t adds = 0;
    std::int64_t muls = 0;
    std::int64_t divs = 0;

    std::int64_t total() const noexcept { return adds + muls + divs; }

    Counter& operator+=(const Counter& o) noexcept {
        adds += o.adds;
        muls += o.muls;
        divs += o.divs;
        return *this;
    }
};

namespace detail {
inline thread_local Counter* active = nullptr;
}

inline void add(std::int64_t k) noexcept {
    if (detail::active) detail::active->adds += k;
}
inline void mul(std::int64_t k) noexcept {
    if (detail::active) detail::active->muls += k;
}
inline void div(std::int64_t k) noexcept {
    if (detail::active) detail::active->divs += k;
}

/// Activates a counter for the current thread for the lifetime of the
/// scope. Regions nest; counts go to the innermost counter only, so each
/// region observes exactly its own work.
class Region {
public:
    explicit Region(Counter& c) noexcept : prev_(detail::active) { detail::active = &c; }
    ~Region() { detail::active = prev_; }

    Region(const Region&) = delete;
    Region& operator=(const Region&) = delete;

private:
    Counter* prev_;
};

/// Runs `region` with a fresh counter and returns the counts.
template <typename F>
Counter counted(F&& region) {
    Counter c;
    {
        Region scope(c);
        std::forward<F>(region)();
    }
    return c;
}

}  // namespace atrid::flops
