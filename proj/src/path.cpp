#include "polarpo/path.hpp"

#include <cctype>

namespace polarpo {

std::string Path::str() const {
    std::string s;
    s.reserve(b.size());
    for (uint8_t bit : b) s.push_back(bit ? '1' : '0');
    return s;
}

Path parse_path(const std::string& text) {
    std::vector<uint8_t> out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        if (c != '0' && c != '1')
            throw std::invalid_argument("path: unexpected character '" + std::string(1, c) + "'");
        uint8_t bit = static_cast<uint8_t>(c - '0');
        ++i;
        if (i < n && text[i] == '^') {
            ++i;
            if (i < n && text[i] == '-')
                throw std::invalid_argument("path: negative run length");
            size_t start = i;
            while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            if (i == start) throw std::invalid_argument("path: missing run length after '^'");
            long reps = std::stol(text.substr(start, i - start));
            for (long r = 0; r < reps; ++r) out.push_back(bit);
        } else {
            out.push_back(bit);
        }
    }
    return Path(std::move(out));
}

Path concat(const Path& a, const Path& g) {
    Path r = a;
    r.b.insert(r.b.end(), g.b.begin(), g.b.end());
    return r;
}

Path invert(const Path& p) {
    Path r = p;
    for (auto& bit : r.b) bit ^= 1;
    return r;
}

Path reversed(const Path& p) {
    Path r = p;
    std::reverse(r.b.begin(), r.b.end());
    return r;
}

Counts counts(const Path& p) {
    Counts c{0, 0};
    for (uint8_t bit : p.b) (bit ? c.n1 : c.n0)++;
    return c;
}

Path repeat(uint8_t bit, int times) {
    return Path(std::vector<uint8_t>(static_cast<size_t>(times), bit));
}

Path index_to_path(ChannelIndex c, BitOrder order) {
    if (c.n < 0 || (c.n < 32 && c.i >= (1u << c.n)))
        throw std::invalid_argument("channel index out of range");
    std::vector<uint8_t> bits(static_cast<size_t>(c.n));
    for (int j = 0; j < c.n; ++j)
        bits[static_cast<size_t>(j)] = (c.i >> (c.n - 1 - j)) & 1u;
    if (order == BitOrder::lsb_first) std::reverse(bits.begin(), bits.end());
    return Path(std::move(bits));
}

uint32_t path_to_index(const Path& p, BitOrder order) {
    uint32_t v = 0;
    if (order == BitOrder::msb_first) {
        for (uint8_t bit : p.b) v = (v << 1) | bit;
    } else {
        for (auto it = p.b.rbegin(); it != p.b.rend(); ++it) v = (v << 1) | *it;
    }
    return v;
}

uint32_t pack_path(const Path& p) { return path_to_index(p, BitOrder::msb_first); }

Path unpack_path(uint32_t v, int n) { return index_to_path({n, v}, BitOrder::msb_first); }

}  // namespace polarpo
