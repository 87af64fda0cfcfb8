#pragma once

#include <cstdint>
#include <string>

namespace superalg {

struct SuperDim {
    int m = 0;
    int n = 0;

    int size() const { return m + n; }
    int parity(int i) const { return i > m ? 1 : 0; }
    SuperDim swapped() const { return {n, m}; }
    bool operator==(const SuperDim&) const = default;
};

enum class Family : uint8_t {
    Lambda = 0,  // highest weight components, central
    Param = 1,   // the shift parameter r, central
    Level = 2,   // K, central
    Gen = 3,     // abstract generator symbols, central
    X = 4,       // free test letters
    Z = 5,       // z_ij
    ZA = 6,      // z^(r)_ij
    Y = 7,       // y^(r)_ij
    E = 8,       // e_ij[r]
    Tau = 9,
    D = 10,
};

// Packed so that the natural order on `key` is (family, mode, i, j).
class GenSymbol {
public:
    GenSymbol() = default;
    static GenSymbol from_key(uint64_t k) {
        GenSymbol g;
        g.key_ = k;
        return g;
    }
    static GenSymbol make(Family f, int r, int i, int j, int parity) {
        GenSymbol g;
        g.key_ = (uint64_t(f) << 60) | (uint64_t(r + 32768) << 44) | (uint64_t(i) << 36) |
                 (uint64_t(j) << 28) | uint64_t(parity & 1);
        return g;
    }

    static GenSymbol z(const SuperDim& sd, int i, int j) {
        return make(Family::Z, 0, i, j, sd.parity(i) + sd.parity(j));
    }
    static GenSymbol za(const SuperDim& sd, int r, int i, int j) {
        return make(Family::ZA, r, i, j, sd.parity(i) + sd.parity(j));
    }
    static GenSymbol y(const SuperDim& sd, int r, int i, int j) {
        return make(Family::Y, r, i, j, sd.parity(i) + sd.parity(j));
    }
    static GenSymbol e(const SuperDim& sd, int r, int i, int j) {
        return make(Family::E, r, i, j, sd.parity(i) + sd.parity(j));
    }
    static GenSymbol tau() { return make(Family::Tau, 0, 0, 0, 0); }
    static GenSymbol level() { return make(Family::Level, 0, 0, 0, 0); }
    static GenSymbol d() { return make(Family::D, 0, 0, 0, 0); }
    static GenSymbol lambda(int i) { return make(Family::Lambda, 0, i, 0, 0); }
    static GenSymbol param() { return make(Family::Param, 0, 0, 0, 0); }
    // kind 0: sigma-type generator, kind 1: h-type generator
    static GenSymbol gen(int kind, int k, int r) { return make(Family::Gen, r, k, kind, 0); }
    static GenSymbol x(int i, int parity) { return make(Family::X, 0, i, 0, parity); }

    uint64_t key() const { return key_; }
    Family family() const { return Family(key_ >> 60); }
    int mode() const { return int((key_ >> 44) & 0xffff) - 32768; }
    int i() const { return int((key_ >> 36) & 0xff); }
    int j() const { return int((key_ >> 28) & 0xff); }
    int parity() const { return int(key_ & 1); }
    bool is_central() const {
        auto f = family();
        return f == Family::Lambda || f == Family::Param || f == Family::Level || f == Family::Gen;
    }

    std::string str() const;

    auto operator<=>(const GenSymbol&) const = default;

private:
    uint64_t key_ = 0;
};

}  // namespace superalg
