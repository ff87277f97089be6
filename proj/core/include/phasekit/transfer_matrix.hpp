#pragma once

#include "phasekit/polynomial.hpp"
#include "phasekit/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace phasekit {

struct RationalEntry {
    Polynomial num;
    Polynomial den{1.0};
};

/// Square matrix of proper rational functions, stored row-major.
class RationalTransferMatrix {
   public:
    RationalTransferMatrix() = default;
    RationalTransferMatrix(int m, std::vector<RationalEntry> entries)
        : m_(m), entries_(std::move(entries)) {}

    int size() const { return m_; }
    const RationalEntry& entry(int row, int col) const { return entries_[row * m_ + col]; }
    RationalEntry& entry(int row, int col) { return entries_[row * m_ + col]; }

    bool operator==(const RationalTransferMatrix& rhs) const {
        return m_ == rhs.m_ && entries_ == rhs.entries_;
    }

   private:
    int m_ = 0;
    std::vector<RationalEntry> entries_;
};

/// Parses the transfer-matrix grammar: rows separated by ';', entries by ',',
/// each entry "poly" or "num/den" where either side may be parenthesised and
/// poly is a sum of terms c*s^k with implicit coefficients and powers.
/// Throws SyntaxError (with line/column), NonProperEntry, NonSquare.
RationalTransferMatrix parse_transfer_matrix(std::string_view text);

/// Canonical printer; parse(print(tfm)) reproduces tfm structurally.
std::string print_transfer_matrix(const RationalTransferMatrix& tfm);

/// Entrywise evaluation at a complex point. Throws PoleHit near poles.
ComplexMatrix eval_tfm(const RationalTransferMatrix& tfm, Complex s);

}  // namespace phasekit
