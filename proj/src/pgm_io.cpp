#include "curvseg/pgm_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace curvseg {

namespace {

struct Cursor {
    const std::string& data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    char peek() const { return data[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            const char c = data[pos];
            if (c == '#') {
                while (!eof() && data[pos] != '\n') ++pos;
            } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* what) {
        skip_space_and_comments();
        if (eof()) throw io_error(std::string("pgm: unexpected end of file reading ") + what,
                                  pos);
        long value = 0;
        bool any = false;
        while (!eof() && data[pos] >= '0' && data[pos] <= '9') {
            value = value * 10 + (data[pos] - '0');
            ++pos;
            any = true;
        }
        if (!any)
            throw io_error(std::string("pgm: expected integer for ") + what, pos);
        return value;
    }
};

}  // namespace

RasterImage read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("pgm: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    Cursor cur{data};

    if (data.size() < 2) throw io_error("pgm: truncated magic", 0);
    const std::string magic = data.substr(0, 2);
    cur.pos = 2;
    if (magic != "P2" && magic != "P5")
        throw io_error("pgm: unsupported format '" + magic + "' (need P2 or P5)", 0);

    const long width = cur.next_int("width");
    const long height = cur.next_int("height");
    const long maxval = cur.next_int("maxval");
    if (width < 1 || height < 1) throw io_error("pgm: bad dimensions", cur.pos);
    if (maxval < 1 || maxval > 65535) throw io_error("pgm: maxval out of range", cur.pos);

    RasterImage img = make_image((int)width, (int)height, 1.0, {0.0, 0.0});
    const std::size_t n = img.pixel_count();

    if (magic == "P2") {
        for (std::size_t i = 0; i < n; ++i) {
            const long v = cur.next_int("pixel");
            if (v > maxval) throw io_error("pgm: sample exceeds maxval", cur.pos);
            // file rows run top to bottom; our row 0 is the bottom
            const std::size_t row = i / (std::size_t)width;
            const std::size_t col = i % (std::size_t)width;
            img.at((int)col, (int)(height - 1 - (long)row)) = (double)v / (double)maxval;
        }
    } else {
        // exactly one whitespace byte separates the header from the payload
        if (cur.eof()) throw io_error("pgm: missing payload", cur.pos);
        ++cur.pos;
        const int bytes = maxval > 255 ? 2 : 1;
        if (data.size() - cur.pos < n * (std::size_t)bytes)
            throw io_error("pgm: truncated payload", data.size());
        for (std::size_t i = 0; i < n; ++i) {
            long v;
            if (bytes == 1) {
                v = (unsigned char)data[cur.pos++];
            } else {
                const long hi = (unsigned char)data[cur.pos++];
                const long lo = (unsigned char)data[cur.pos++];
                v = (hi << 8) | lo;  // big-endian
            }
            if (v > maxval) throw io_error("pgm: sample exceeds maxval", cur.pos);
            const std::size_t row = i / (std::size_t)width;
            const std::size_t col = i % (std::size_t)width;
            img.at((int)col, (int)(height - 1 - (long)row)) = (double)v / (double)maxval;
        }
    }
    return img;
}

void write_pgm(const RasterImage& img, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("pgm: cannot write " + path);
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    std::vector<unsigned char> row((std::size_t)img.width);
    for (int y = img.height - 1; y >= 0; --y) {
        for (int x = 0; x < img.width; ++x) {
            const double v = std::clamp(img.at(x, y), 0.0, 1.0);
            row[(std::size_t)x] = (unsigned char)std::lround(v * 255.0);
        }
        out.write((const char*)row.data(), (std::streamsize)row.size());
    }
    if (!out) throw io_error("pgm: write failed for " + path);
}

void write_label_image(const LayeredSegmentation& seg, const RasterImage& frame,
                       const std::string& path) {
    const OverlapDecomposition dec = overlap_decompose(seg, frame);
    const long k = (long)seg.size();
    RasterImage labels = make_image(frame.width, frame.height, frame.pixel_size,
                                    frame.origin);
    for (std::size_t p = 0; p < dec.labels.size(); ++p) {
        const long i = dec.labels[p];
        labels.values[p] = i == 0 ? 0.0 : std::floor(255.0 * (double)i / (double)(k + 1)) / 255.0;
    }
    write_pgm(labels, path);
}

}  // namespace curvseg
