#pragma once
// Polarization paths: 0/1 strings where position 1 is the first transform
// applied to the raw channel. Also the mapping between synthesized-channel
// indices and paths.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace polarpo {

struct Path {
    std::vector<uint8_t> b;  // each element 0 or 1, b[0] = first transform

    Path() = default;
    explicit Path(std::vector<uint8_t> bits) : b(std::move(bits)) {}

    size_t size() const { return b.size(); }
    bool empty() const { return b.empty(); }
    uint8_t operator[](size_t i) const { return b[i]; }

    bool operator==(const Path&) const = default;
    bool operator<(const Path& o) const { return b < o.b; }

    std::string str() const;
};

// Text syntax: plain "0110", or run-length shorthand "0^2 1^3" (spaces
// optional). Throws std::invalid_argument on anything else.
Path parse_path(const std::string& text);

Path concat(const Path& a, const Path& g);
Path invert(const Path& p);                    // bitwise complement
Path reversed(const Path& p);
struct Counts { int n0, n1; };
Counts counts(const Path& p);
Path repeat(uint8_t bit, int times);           // 0^p / 1^q building block

struct ChannelIndex {
    int n;        // log2 of block length
    uint32_t i;   // 0 <= i < 2^n
};

enum class BitOrder { msb_first, lsb_first };

// MSB-first: most significant bit of i becomes the first transform.
Path index_to_path(ChannelIndex c, BitOrder order = BitOrder::msb_first);
uint32_t path_to_index(const Path& p, BitOrder order = BitOrder::msb_first);

// Dense integer encoding used by caches and the pair database: the path is
// read MSB-first into the low n bits of the result.
uint32_t pack_path(const Path& p);
Path unpack_path(uint32_t v, int n);

}  // namespace polarpo
