#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace shadowcalc {

// Error hierarchy. Code strings are stable and surface through the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define SHADOWCALC_ERROR(NAME)                                        \
    class NAME : public Error {                                       \
    public:                                                           \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

SHADOWCALC_ERROR(CompositionMismatch);
SHADOWCALC_ERROR(InvalidMorphism);
SHADOWCALC_ERROR(NotInternalWhite);
SHADOWCALC_ERROR(GraphMismatch);
SHADOWCALC_ERROR(UnsupportedGrayCycle);
SHADOWCALC_ERROR(OrderViolation);
SHADOWCALC_ERROR(NotAFlipSquare);
SHADOWCALC_ERROR(InconsistentGlue);
SHADOWCALC_ERROR(PushoutFailure);
SHADOWCALC_ERROR(NotCommuting);
SHADOWCALC_ERROR(NotSingleFlip);
SHADOWCALC_ERROR(BaseMismatch);
SHADOWCALC_ERROR(ShapeMismatch);
SHADOWCALC_ERROR(NotBeckChevalley);
SHADOWCALC_ERROR(StampMismatch);
SHADOWCALC_ERROR(PathMismatch);
SHADOWCALC_ERROR(NotDualizable);
SHADOWCALC_ERROR(ParseError);

#undef SHADOWCALC_ERROR

// An element of a finite set: either an opaque atom or an ordered tuple of
// elements. Products, pullback pairs, and tensor tuples all reuse this one
// tree shape, so composite bijections stay pointwise comparable.
class Elem {
public:
    Elem() : node_(std::vector<Elem>{}) {}  // empty tuple
    static Elem atom(std::int64_t v) {
        Elem e;
        e.node_ = v;
        return e;
    }
    static Elem tuple(std::vector<Elem> parts) {
        Elem e;
        e.node_ = std::move(parts);
        return e;
    }
    static Elem pair(Elem a, Elem b) { return tuple({std::move(a), std::move(b)}); }

    bool is_atom() const { return std::holds_alternative<std::int64_t>(node_); }
    std::int64_t atom_value() const { return std::get<std::int64_t>(node_); }
    const std::vector<Elem>& parts() const { return std::get<std::vector<Elem>>(node_); }

    std::strong_ordering operator<=>(const Elem& o) const {
        if (is_atom() != o.is_atom()) return is_atom() ? std::strong_ordering::less : std::strong_ordering::greater;
        if (is_atom()) return atom_value() <=> o.atom_value();
        const auto& a = parts();
        const auto& b = o.parts();
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            auto c = a[i] <=> b[i];
            if (c != std::strong_ordering::equal) return c;
        }
        return a.size() <=> b.size();
    }
    bool operator==(const Elem& o) const { return (*this <=> o) == std::strong_ordering::equal; }

    std::string str() const {
        std::ostringstream os;
        print(os);
        return os.str();
    }

private:
    void print(std::ostream& os) const {
        if (is_atom()) {
            os << atom_value();
            return;
        }
        os << '(';
        bool first = true;
        for (const auto& p : parts()) {
            if (!first) os << ',';
            first = false;
            p.print(os);
        }
        os << ')';
    }
    std::variant<std::int64_t, std::vector<Elem>> node_;
};

// Deterministic RNG used by every randomized suite; the seed is the only
// source of nondeterminism in the project.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}
    // inclusive bounds
    int pick(int lo, int hi) {
        std::uniform_int_distribution<int> d(lo, hi);
        return d(gen_);
    }
    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace shadowcalc
