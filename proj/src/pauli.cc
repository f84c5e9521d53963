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

#include "floquet_tails/pauli.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ft {

Dyadic Dyadic::ratio(int64_t num, int exp) {
    Dyadic d;
    if (exp < 0) {
        d.num_ = num << (-exp);
        d.exp_ = 0;
    } else {
        d.num_ = num;
        d.exp_ = exp;
    }
    d.normalize();
    return d;
}

void Dyadic::normalize() {
    if (num_ == 0) {
        exp_ = 0;
        return;
    }
    while (exp_ > 0 && (num_ & 1) == 0) {
        num_ /= 2;
        exp_--;
    }
}

double Dyadic::to_double() const {
    return std::ldexp(static_cast<double>(num_), -exp_);
}

std::string Dyadic::str() const {
    if (exp_ == 0) {
        return std::to_string(num_);
    }
    return std::to_string(num_) + "/" + std::to_string(int64_t{1} << exp_);
}

Dyadic Dyadic::operator-() const {
    Dyadic d = *this;
    d.num_ = -d.num_;
    return d;
}

Dyadic Dyadic::operator+(const Dyadic &other) const {
    int e = std::max(exp_, other.exp_);
    Dyadic d;
    d.num_ = (num_ << (e - exp_)) + (other.num_ << (e - other.exp_));
    d.exp_ = e;
    d.normalize();
    return d;
}

Dyadic Dyadic::operator-(const Dyadic &other) const {
    return *this + (-other);
}

Dyadic Dyadic::operator*(const Dyadic &other) const {
    Dyadic d;
    d.num_ = num_ * other.num_;
    d.exp_ = exp_ + other.exp_;
    d.normalize();
    return d;
}

Dyadic &Dyadic::operator+=(const Dyadic &other) {
    *this = *this + other;
    return *this;
}

char letter_char(PauliLetter letter) {
    switch (letter) {
        case PauliLetter::I:
            return '1';
        case PauliLetter::X:
            return 'X';
        case PauliLetter::Y:
            return 'Y';
        case PauliLetter::Z:
            return 'Z';
    }
    return '?';
}

PauliLetter letter_from_char(char c) {
    switch (c) {
        case '1':
        case 'I':
        case '_':
            return PauliLetter::I;
        case 'X':
            return PauliLetter::X;
        case 'Y':
            return PauliLetter::Y;
        case 'Z':
            return PauliLetter::Z;
        default:
            throw std::invalid_argument(std::string("not a Pauli letter: '") + c + "'");
    }
}

PauliLetter PauliString::at_site(int site) const {
    int j = site - offset;
    if (j < 0 || j >= static_cast<int>(letters.size())) {
        return PauliLetter::I;
    }
    return letters[j];
}

int PauliString::count(PauliLetter letter) const {
    return static_cast<int>(std::count(letters.begin(), letters.end(), letter));
}

bool PauliString::is_identity() const {
    return count(PauliLetter::I) == static_cast<int>(letters.size());
}

std::string PauliString::name() const {
    std::string s;
    s.reserve(letters.size());
    for (auto l : letters) {
        s.push_back(letter_char(l));
    }
    return s;
}

PauliString PauliString::from_name(std::string_view name, int offset) {
    PauliString p;
    p.offset = offset;
    for (char c : name) {
        p.letters.push_back(letter_from_char(c));
    }
    return p;
}

PauliString PauliString::trimmed() const {
    size_t lo = 0;
    size_t hi = letters.size();
    while (lo < hi && letters[lo] == PauliLetter::I) {
        lo++;
    }
    while (hi > lo && letters[hi - 1] == PauliLetter::I) {
        hi--;
    }
    PauliString p;
    p.offset = offset + static_cast<int>(lo);
    p.letters.assign(letters.begin() + lo, letters.begin() + hi);
    return p;
}

PauliString PauliString::shifted(int delta) const {
    PauliString p = *this;
    p.offset += delta;
    return p;
}

OperatorSum::OperatorSum(const PauliString &single, Dyadic coef) {
    add(single, coef);
}

void OperatorSum::add(const PauliString &term, const Dyadic &coef) {
    if (coef.is_zero()) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(term, coef);
    if (!inserted) {
        it->second += coef;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

OperatorSum OperatorSum::operator-() const {
    return scaled(-1);
}

OperatorSum OperatorSum::operator+(const OperatorSum &other) const {
    OperatorSum r = *this;
    for (const auto &[p, c] : other.terms_) {
        r.add(p, c);
    }
    return r;
}

OperatorSum OperatorSum::operator-(const OperatorSum &other) const {
    return *this + (-other);
}

OperatorSum OperatorSum::scaled(const Dyadic &factor) const {
    OperatorSum r;
    for (const auto &[p, c] : terms_) {
        r.add(p, c * factor);
    }
    return r;
}

OperatorSum OperatorSum::shifted(int delta) const {
    OperatorSum r;
    for (const auto &[p, c] : terms_) {
        r.add(p.shifted(delta), c);
    }
    return r;
}

std::string OperatorSum::str() const {
    if (terms_.empty()) {
        return "0";
    }
    std::stringstream ss;
    bool first = true;
    for (const auto &[p, c] : terms_) {
        if (!first) {
            ss << " + ";
        }
        first = false;
        ss << c.str() << "*" << p.name() << "@" << p.offset;
    }
    return ss.str();
}

std::vector<PauliString> enumerate_range4(int window_offset) {
    std::vector<PauliString> out;
    out.reserve(kNumWindowOperators);
    for (int code = 1; code < 256; code++) {
        PauliString p;
        p.offset = window_offset;
        p.letters.resize(kWindowSize);
        for (int j = 0; j < kWindowSize; j++) {
            // Leftmost site is the most significant base-4 digit.
            p.letters[j] = static_cast<PauliLetter>((code >> (2 * (kWindowSize - 1 - j))) & 3);
        }
        out.push_back(std::move(p));
    }
    return out;
}

int window_index(const PauliString &op) {
    if (op.size() != kWindowSize) {
        throw std::invalid_argument("window_index needs a 4-letter string, got " + op.name());
    }
    int code = 0;
    for (auto l : op.letters) {
        code = code * 4 + static_cast<int>(l);
    }
    if (code == 0) {
        throw std::invalid_argument("identity string has no window index");
    }
    return code - 1;
}

namespace {

struct GaussianDyadic {
    Dyadic re;
    Dyadic im;
    GaussianDyadic operator*(const GaussianDyadic &o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
};

}  // namespace

OperatorSum symmetrize(const PauliString &op) {
    std::vector<size_t> flip_sites;
    for (size_t j = 0; j < op.letters.size(); j++) {
        if (op.letters[j] == PauliLetter::X || op.letters[j] == PauliLetter::Y) {
            flip_sites.push_back(j);
        }
    }
    size_t k = flip_sites.size();
    if (k % 2 == 1) {
        return {};
    }
    if (k == 0) {
        return OperatorSum(op);
    }

    // X = s+ + s-,  Y = -i s+ + i s-,  s+- = (X +- iY) / 2.
    // Keep ladder products with as many raising as lowering factors.
    std::map<PauliString, GaussianDyadic> acc;
    const Dyadic half = Dyadic::ratio(1, 1);
    for (uint32_t raise = 0; raise < (1u << k); raise++) {
        if (static_cast<size_t>(__builtin_popcount(raise)) * 2 != k) {
            continue;
        }
        GaussianDyadic ladder_coef{1, 0};
        for (size_t q = 0; q < k; q++) {
            bool up = (raise >> q) & 1;
            if (op.letters[flip_sites[q]] == PauliLetter::Y) {
                ladder_coef = ladder_coef * GaussianDyadic{0, up ? -1 : 1};
            }
        }
        for (uint32_t pick_y = 0; pick_y < (1u << k); pick_y++) {
            GaussianDyadic coef = ladder_coef;
            PauliString term = op;
            for (size_t q = 0; q < k; q++) {
                bool up = (raise >> q) & 1;
                bool y = (pick_y >> q) & 1;
                term.letters[flip_sites[q]] = y ? PauliLetter::Y : PauliLetter::X;
                if (y) {
                    coef = coef * GaussianDyadic{0, up ? half : -half};
                } else {
                    coef = coef * GaussianDyadic{half, 0};
                }
            }
            auto &slot = acc[term];
            slot.re += coef.re;
            slot.im += coef.im;
        }
    }

    OperatorSum result;
    for (const auto &[term, coef] : acc) {
        if (!coef.im.is_zero()) {
            throw std::logic_error("symmetrize produced a non-Hermitian term for " + op.name());
        }
        result.add(term, coef.re);
    }
    return result;
}

OperatorSum symmetrize(const OperatorSum &op) {
    OperatorSum result;
    for (const auto &[p, c] : op.terms()) {
        result = result + symmetrize(p).scaled(c);
    }
    return result;
}

int rpx_parity(const PauliString &op) {
    int odd = op.count(PauliLetter::Y) + op.count(PauliLetter::Z);
    return odd % 2 == 0 ? +1 : -1;
}

OperatorSum reflect_sites(const OperatorSum &op, int center) {
    OperatorSum r;
    for (const auto &[p, c] : op.terms()) {
        PauliString q;
        q.offset = center - (p.offset + static_cast<int>(p.size()) - 1);
        q.letters.assign(p.letters.rbegin(), p.letters.rend());
        r.add(q, c);
    }
    return r;
}

OperatorSum link_invert(const OperatorSum &op, int window_offset) {
    for (const auto &[p, c] : op.terms()) {
        if (p.offset < window_offset || p.offset + static_cast<int>(p.size()) > window_offset + kWindowSize) {
            throw std::invalid_argument("link_invert: term " + p.name() + " leaves the window");
        }
    }
    return reflect_sites(op, 2 * window_offset + kWindowSize - 1);
}

std::optional<int> il_parity(const OperatorSum &op, int window_offset) {
    auto image = link_invert(op, window_offset);
    if (image == op) {
        return +1;
    }
    if (image == -op) {
        return -1;
    }
    return std::nullopt;
}

OperatorSum canonical_translation(const OperatorSum &op, int period) {
    OperatorSum trimmed;
    int lo = 0;
    bool any = false;
    for (const auto &[p, c] : op.terms()) {
        auto t = p.trimmed();
        trimmed.add(t, c);
        if (!t.letters.empty() && (!any || t.offset < lo)) {
            lo = t.offset;
            any = true;
        }
    }
    int base = lo - (((lo % period) + period) % period);
    return trimmed.shifted(-base);
}

std::optional<int> il_parity_mod_translation(const OperatorSum &op, int period) {
    if (op.is_zero()) {
        return std::nullopt;
    }
    auto canon = canonical_translation(op, period);
    auto image = canonical_translation(reflect_sites(op, 2 * period + 1), period);
    if (image == canon) {
        return +1;
    }
    if (image == -canon) {
        return -1;
    }
    return std::nullopt;
}

namespace {

OperatorSum map_letters(const OperatorSum &op, PauliLetter to_x, int sign_x, PauliLetter to_y, int sign_y,
                        int sign_z) {
    OperatorSum r;
    for (const auto &[p, c] : op.terms()) {
        PauliString q = p;
        int sign = 1;
        for (auto &l : q.letters) {
            switch (l) {
                case PauliLetter::X:
                    l = to_x;
                    sign *= sign_x;
                    break;
                case PauliLetter::Y:
                    l = to_y;
                    sign *= sign_y;
                    break;
                case PauliLetter::Z:
                    sign *= sign_z;
                    break;
                case PauliLetter::I:
                    break;
            }
        }
        r.add(q, sign > 0 ? c : -c);
    }
    return r;
}

}  // namespace

OperatorSum rz_quarter(const OperatorSum &op) {
    return map_letters(op, PauliLetter::Y, +1, PauliLetter::X, -1, +1);
}

OperatorSum rx_half(const OperatorSum &op) {
    return map_letters(op, PauliLetter::X, +1, PauliLetter::Y, -1, -1);
}

}  // namespace ft
