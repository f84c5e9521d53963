// Copyright 2026 The floquet-tails Authors
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

#ifndef FLOQUET_TAILS_PAULI_H
#define FLOQUET_TAILS_PAULI_H

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ft {

/// Exact value num / 2^exp. Symmetrization only ever produces powers of one half,
/// so coefficients stay exact.
class Dyadic {
   public:
    constexpr Dyadic() = default;
    constexpr Dyadic(int64_t integer) : num_(integer), exp_(0) {
    }
    static Dyadic ratio(int64_t num, int exp);

    int64_t num() const {
        return num_;
    }
    int exp() const {
        return exp_;
    }
    bool is_zero() const {
        return num_ == 0;
    }
    double to_double() const;
    std::string str() const;

    Dyadic operator-() const;
    Dyadic operator+(const Dyadic &other) const;
    Dyadic operator-(const Dyadic &other) const;
    Dyadic operator*(const Dyadic &other) const;
    Dyadic &operator+=(const Dyadic &other);
    bool operator==(const Dyadic &other) const = default;

   private:
    void normalize();
    int64_t num_ = 0;
    int exp_ = 0;
};

enum class PauliLetter : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

/// Serialized letter: '1' for identity, otherwise 'X', 'Y', 'Z'.
char letter_char(PauliLetter letter);
PauliLetter letter_from_char(char c);

/// Tensor product of letters on consecutive sites starting at `offset`.
/// letters[j] acts on site offset + j.
struct PauliString {
    int offset = 0;
    std::vector<PauliLetter> letters;

    size_t size() const {
        return letters.size();
    }
    PauliLetter at_site(int site) const;
    int count(PauliLetter letter) const;
    bool is_identity() const;
    /// "ZZ1Z" style name; the offset is not part of the name.
    std::string name() const;
    static PauliString from_name(std::string_view name, int offset = 0);
    /// Strips identity letters from both ends, moving the offset accordingly.
    PauliString trimmed() const;
    PauliString shifted(int delta) const;

    auto operator<=>(const PauliString &other) const = default;
    bool operator==(const PauliString &other) const = default;
};

/// Real-weighted sum of Pauli strings. Zero coefficients are never stored.
class OperatorSum {
   public:
    OperatorSum() = default;
    explicit OperatorSum(const PauliString &single, Dyadic coef = 1);

    void add(const PauliString &term, const Dyadic &coef);
    bool is_zero() const {
        return terms_.empty();
    }
    const std::map<PauliString, Dyadic> &terms() const {
        return terms_;
    }
    OperatorSum operator-() const;
    OperatorSum operator+(const OperatorSum &other) const;
    OperatorSum operator-(const OperatorSum &other) const;
    OperatorSum scaled(const Dyadic &factor) const;
    OperatorSum shifted(int delta) const;
    bool operator==(const OperatorSum &other) const = default;
    std::string str() const;

   private:
    std::map<PauliString, Dyadic> terms_;
};

constexpr int kWindowSize = 4;
constexpr int kNumWindowOperators = 255;

/// All 255 non-identity strings on sites offset..offset+3, ordered lexicographically
/// (I < X < Y < Z, leftmost site most significant). This order is the column order
/// of every output file.
std::vector<PauliString> enumerate_range4(int window_offset = 0);

/// Position of a 4-letter string in enumerate_range4 order (0..254).
int window_index(const PauliString &op);

/// Projection onto the zero-charge sector of total Z magnetization.
OperatorSum symmetrize(const PauliString &op);
OperatorSum symmetrize(const OperatorSum &op);

/// Eigenvalue under conjugation by a pi rotation about x: (-1)^(#Y + #Z).
int rpx_parity(const PauliString &op);

/// Reflection i -> 2*window_offset + 3 - i about the window's central link.
OperatorSum link_invert(const OperatorSum &op, int window_offset = 0);

/// +1 / -1 if link_invert(op) equals op / -op term by term, nullopt otherwise.
std::optional<int> il_parity(const OperatorSum &op, int window_offset = 0);

/// Link-inversion parity of the operator summed over translations by multiples of
/// `period` sites. This is the parity seen by a translation-invariant field theory
/// when only period-sized translations are symmetries.
std::optional<int> il_parity_mod_translation(const OperatorSum &op, int period = 2);

/// Translation-canonical form: shifts all terms so the leftmost non-identity site
/// lands in [0, period).
OperatorSum canonical_translation(const OperatorSum &op, int period);

/// Conjugation by a global pi/2 rotation about z, fixed as X -> Y, Y -> -X, Z -> Z.
OperatorSum rz_quarter(const OperatorSum &op);

/// Conjugation by a global pi rotation about x: X -> X, Y -> -Y, Z -> -Z.
OperatorSum rx_half(const OperatorSum &op);

/// Mirror i -> center - i on the given sum (center odd means a link center).
OperatorSum reflect_sites(const OperatorSum &op, int center);

}  // namespace ft

#endif
