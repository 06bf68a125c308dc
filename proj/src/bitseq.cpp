#include "nkcsim/bitseq.hpp"

#include <string>

#include "nkcsim/error.hpp"

namespace nkcsim {

void require_bits(std::span<const std::uint8_t> bits, const char* what) {
    if (bits.empty()) {
        throw SimError(ErrorCode::InvalidInput,
                       std::string(what) + " must not be empty");
    }
    for (auto b : bits) {
        if (b > 1) {
            throw SimError(ErrorCode::InvalidInput,
                           std::string(what) + " contains a value that is not 0 or 1");
        }
    }
}

Rational payoff_exact(std::span<const std::uint8_t> seq) {
    require_bits(seq, "sequence");
    std::int64_t ones = 0;
    for (auto b : seq) ones += b;
    return Rational{ones, static_cast<std::int64_t>(seq.size())};
}

double payoff(std::span<const std::uint8_t> seq) {
    return payoff_exact(seq).value();
}

} // namespace nkcsim
