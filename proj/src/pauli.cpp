// Copyright 2026 The gcans Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "gcans/pauli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include <fmt/format.h>

namespace gcans {

PauliString::PauliString(std::vector<Pauli> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw std::invalid_argument("Pauli string must act on at least one qubit");
    }
    if (letters_.size() > max_qubits) {
        throw std::invalid_argument(
            fmt::format("Pauli string has {} qubits, limit is {}", letters_.size(), max_qubits));
    }
}

PauliString PauliString::parse(std::string_view word) {
    std::vector<Pauli> letters;
    letters.reserve(word.size());
    for (char c : word) {
        switch (c) {
        case 'I':
            letters.push_back(Pauli::I);
            break;
        case 'X':
            letters.push_back(Pauli::X);
            break;
        case 'Y':
            letters.push_back(Pauli::Y);
            break;
        case 'Z':
            letters.push_back(Pauli::Z);
            break;
        default:
            throw std::invalid_argument(fmt::format("invalid Pauli letter '{}'", c));
        }
    }
    return PauliString(std::move(letters));
}

bool PauliString::is_identity() const {
    return std::all_of(letters_.begin(), letters_.end(), [](Pauli p) { return p == Pauli::I; });
}

std::uint64_t PauliString::x_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        if (letters_[q] == Pauli::X || letters_[q] == Pauli::Y) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

std::uint64_t PauliString::z_mask() const {
    std::uint64_t mask = 0;
    for (std::size_t q = 0; q < letters_.size(); ++q) {
        if (letters_[q] == Pauli::Z || letters_[q] == Pauli::Y) {
            mask |= std::uint64_t{1} << q;
        }
    }
    return mask;
}

std::size_t PauliString::y_count() const {
    return static_cast<std::size_t>(std::count(letters_.begin(), letters_.end(), Pauli::Y));
}

std::string PauliString::to_string() const {
    static constexpr char names[] = {'I', 'X', 'Y', 'Z'};
    std::string out;
    out.reserve(letters_.size());
    for (Pauli p : letters_) {
        out.push_back(names[static_cast<std::size_t>(p)]);
    }
    return out;
}

Observable::Observable(std::size_t num_qubits, std::vector<PauliTerm> terms)
    : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw std::invalid_argument("observable must act on at least one qubit");
    }
    std::map<PauliString, std::size_t> index;
    for (auto &term : terms) {
        if (term.string.num_qubits() != num_qubits) {
            throw std::invalid_argument(
                fmt::format("inconsistent string lengths: '{}' has {} qubits, expected {}",
                            term.string.to_string(), term.string.num_qubits(), num_qubits));
        }
        if (!std::isfinite(term.coefficient)) {
            throw std::invalid_argument(
                fmt::format("non-finite coefficient for '{}'", term.string.to_string()));
        }
        auto [it, inserted] = index.try_emplace(term.string, terms_.size());
        if (inserted) {
            terms_.push_back(std::move(term));
        } else {
            terms_[it->second].coefficient += term.coefficient;
        }
    }
    std::erase_if(terms_, [](const PauliTerm &t) { return t.coefficient == 0.0; });
    if (terms_.empty()) {
        throw std::invalid_argument("observable has no nonzero terms");
    }
    for (const auto &t : terms_) {
        one_norm_ += std::abs(t.coefficient);
    }
}

std::vector<double> Observable::coefficients() const {
    std::vector<double> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
        out.push_back(t.coefficient);
    }
    return out;
}

Observable Observable::scaled(double factor) const {
    std::vector<PauliTerm> terms = terms_;
    for (auto &t : terms) {
        t.coefficient *= factor;
    }
    return Observable(num_qubits_, std::move(terms));
}

ParseError::ParseError(std::size_t line, const std::string &what)
    : std::runtime_error(line == 0 ? what : fmt::format("line {}: {}", line, what)), line_(line) {}

namespace {

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        }
        std::size_t end = pos;
        while (end < s.size() && !std::isspace(static_cast<unsigned char>(s[end]))) {
            ++end;
        }
        if (end > pos) {
            out.push_back(s.substr(pos, end - pos));
        }
        pos = end;
    }
    return out;
}

std::optional<double> parse_double(std::string_view token) {
    if (!token.empty() && token.front() == '+') {
        token.remove_prefix(1);
    }
    double value = 0.0;
    const auto *first = token.data();
    const auto *last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
        return std::nullopt;
    }
    return value;
}

} // namespace

Observable parse_observable(std::string_view text) {
    std::vector<PauliTerm> terms;
    std::size_t num_qubits = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        const auto tokens = split_whitespace(line);
        if (tokens.empty()) {
            continue;
        }
        if (tokens.size() != 2) {
            throw ParseError(line_no, "expected '<coefficient> <pauli string>'");
        }
        const auto coefficient = parse_double(tokens[0]);
        if (!coefficient) {
            throw ParseError(line_no, fmt::format("invalid coefficient '{}'", tokens[0]));
        }
        PauliString string;
        try {
            string = PauliString::parse(tokens[1]);
        } catch (const std::invalid_argument &e) {
            throw ParseError(line_no, e.what());
        }
        if (num_qubits == 0) {
            num_qubits = string.num_qubits();
        } else if (string.num_qubits() != num_qubits) {
            throw ParseError(line_no,
                             fmt::format("inconsistent string lengths: {} vs {}",
                                         string.num_qubits(), num_qubits));
        }
        terms.push_back({*coefficient, std::move(string)});
    }
    if (terms.empty()) {
        throw ParseError(0, "empty Hamiltonian: no terms found");
    }
    try {
        return Observable(num_qubits, std::move(terms));
    } catch (const std::invalid_argument &e) {
        throw ParseError(0, e.what());
    }
}

std::string serialize_observable(const Observable &obs) {
    std::string out;
    for (const auto &t : obs.terms()) {
        out += fmt::format("{:.17g} {}\n", t.coefficient, t.string.to_string());
    }
    return out;
}

Observable tfim(std::size_t num_qubits, double field, Boundary boundary) {
    if (num_qubits < 2) {
        throw std::invalid_argument("tfim needs at least 2 sites");
    }
    if (boundary == Boundary::periodic && num_qubits < 3) {
        // the wrap-around bond of a 2-site ring duplicates the open bond
        throw std::invalid_argument("periodic tfim needs at least 3 sites");
    }
    std::vector<PauliTerm> terms;
    const std::size_t bonds = boundary == Boundary::open ? num_qubits - 1 : num_qubits;
    for (std::size_t i = 0; i < bonds; ++i) {
        std::vector<Pauli> letters(num_qubits, Pauli::I);
        letters[i] = Pauli::Z;
        letters[(i + 1) % num_qubits] = Pauli::Z;
        terms.push_back({1.0, PauliString(std::move(letters))});
    }
    for (std::size_t i = 0; i < num_qubits; ++i) {
        std::vector<Pauli> letters(num_qubits, Pauli::I);
        letters[i] = Pauli::X;
        terms.push_back({field, PauliString(std::move(letters))});
    }
    return Observable(num_qubits, std::move(terms));
}

double lipschitz_bound(const Observable &obs, std::size_t num_parameters) {
    if (num_parameters == 0) {
        throw std::invalid_argument("parameter count must be positive");
    }
    return static_cast<double>(num_parameters) * obs.one_norm();
}

Boundary parse_boundary(std::string_view name) {
    if (name == "open") {
        return Boundary::open;
    }
    if (name == "periodic") {
        return Boundary::periodic;
    }
    throw std::invalid_argument(fmt::format("unknown boundary '{}'", name));
}

} // namespace gcans
