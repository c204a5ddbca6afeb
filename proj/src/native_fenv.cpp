// Host binary64 arithmetic under a selected rounding direction. This file is
// compiled with -frounding-math so the operations are not folded or moved
// across the fesetround calls.

#include "isem/fpformat.hpp"
#include "isem/interval.hpp"

#include <cfenv>

namespace isem::detail {

namespace {

int fenv_mode(RoundingDirection dir)
{
    switch (dir) {
    case RoundingDirection::toward_neg_inf:
        return FE_DOWNWARD;
    case RoundingDirection::toward_pos_inf:
        return FE_UPWARD;
    case RoundingDirection::toward_zero:
        return FE_TOWARDZERO;
    case RoundingDirection::nearest:
        break;
    }
    return FE_TONEAREST;
}

// Restores the caller's rounding direction on scope exit.
class RoundingScope {
public:
    explicit RoundingScope(int mode) : saved_(std::fegetround()), ok_(std::fesetround(mode) == 0) {}
    ~RoundingScope() { std::fesetround(saved_); }
    RoundingScope(const RoundingScope&) = delete;
    RoundingScope& operator=(const RoundingScope&) = delete;
    bool ok() const { return ok_; }

private:
    int saved_;
    bool ok_;
};

} // namespace

double native_apply(double a, double b, OpKind op, RoundingDirection dir)
{
    volatile double x = a;
    volatile double y = b;
    volatile double r = 0.0;
    RoundingScope scope(fenv_mode(dir));
    switch (op) {
    case OpKind::add:
        r = x + y;
        break;
    case OpKind::sub:
        r = x - y;
        break;
    case OpKind::mul:
        r = x * y;
        break;
    case OpKind::div:
        r = x / y;
        break;
    }
    return r;
}

bool native_rounding_works()
{
    for (int mode : {FE_DOWNWARD, FE_UPWARD, FE_TOWARDZERO, FE_TONEAREST}) {
        RoundingScope scope(mode);
        if (!scope.ok())
            return false;
    }
    const double down = native_apply(1.0, 3.0, OpKind::div, RoundingDirection::toward_neg_inf);
    const double up = native_apply(1.0, 3.0, OpKind::div, RoundingDirection::toward_pos_inf);
    return down < up;
}

} // namespace isem::detail
