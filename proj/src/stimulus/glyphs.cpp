#include "jndkit/glyphs.hpp"

namespace jndkit::glyphs {

// 7x15 monochrome cells for printable ASCII 32..126, rasterized from DejaVu Sans Mono.
// Bit 6 of each row byte is the leftmost column.
const std::array<std::array<std::uint8_t, kCellHeight>, kGlyphCount> kCells = {{
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 32
    {{0x00, 0x00, 0x00, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 33
    {{0x00, 0x00, 0x00, 0x14, 0x14, 0x14, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 34
    {{0x00, 0x00, 0x00, 0x00, 0x0a, 0x0a, 0x3f, 0x14, 0x14, 0x7f, 0x24, 0x28, 0x00, 0x00, 0x00}},  // 35
    {{0x00, 0x00, 0x00, 0x08, 0x1c, 0x3a, 0x28, 0x18, 0x0e, 0x0a, 0x2a, 0x1e, 0x08, 0x08, 0x00}},  // 36
    {{0x00, 0x00, 0x00, 0x30, 0x48, 0x48, 0x32, 0x08, 0x26, 0x09, 0x09, 0x06, 0x00, 0x00, 0x00}},  // 37
    {{0x00, 0x00, 0x00, 0x1c, 0x30, 0x30, 0x10, 0x38, 0x29, 0x45, 0x22, 0x1d, 0x00, 0x00, 0x00}},  // 38
    {{0x00, 0x00, 0x00, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 39
    {{0x00, 0x00, 0x04, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x04, 0x00, 0x00}},  // 40
    {{0x00, 0x00, 0x10, 0x08, 0x08, 0x08, 0x04, 0x04, 0x04, 0x08, 0x08, 0x08, 0x10, 0x00, 0x00}},  // 41
    {{0x00, 0x00, 0x00, 0x08, 0x2a, 0x1c, 0x1c, 0x2a, 0x08, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 42
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x08, 0x3f, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 43
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x08, 0x00, 0x00}},  // 44
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 45
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 46
    {{0x00, 0x00, 0x00, 0x02, 0x02, 0x04, 0x04, 0x08, 0x08, 0x10, 0x10, 0x20, 0x20, 0x00, 0x00}},  // 47
    {{0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x22, 0x2a, 0x22, 0x22, 0x32, 0x1c, 0x00, 0x00, 0x00}},  // 48
    {{0x00, 0x00, 0x00, 0x3c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x1e, 0x00, 0x00, 0x00}},  // 49
    {{0x00, 0x00, 0x00, 0x1c, 0x26, 0x02, 0x02, 0x04, 0x08, 0x18, 0x30, 0x3e, 0x00, 0x00, 0x00}},  // 50
    {{0x00, 0x00, 0x00, 0x1c, 0x22, 0x02, 0x06, 0x1c, 0x02, 0x02, 0x22, 0x1c, 0x00, 0x00, 0x00}},  // 51
    {{0x00, 0x00, 0x00, 0x04, 0x0c, 0x0c, 0x14, 0x24, 0x24, 0x3f, 0x04, 0x04, 0x00, 0x00, 0x00}},  // 52
    {{0x00, 0x00, 0x00, 0x3e, 0x20, 0x20, 0x3c, 0x06, 0x02, 0x02, 0x26, 0x1c, 0x00, 0x00, 0x00}},  // 53
    {{0x00, 0x00, 0x00, 0x1c, 0x32, 0x20, 0x2c, 0x32, 0x22, 0x22, 0x32, 0x1c, 0x00, 0x00, 0x00}},  // 54
    {{0x00, 0x00, 0x00, 0x3e, 0x02, 0x06, 0x04, 0x04, 0x08, 0x08, 0x08, 0x10, 0x00, 0x00, 0x00}},  // 55
    {{0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x32, 0x1c, 0x22, 0x22, 0x22, 0x1c, 0x00, 0x00, 0x00}},  // 56
    {{0x00, 0x00, 0x00, 0x1c, 0x22, 0x22, 0x22, 0x22, 0x1e, 0x02, 0x06, 0x1c, 0x00, 0x00, 0x00}},  // 57
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x00, 0x00, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 58
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x08, 0x08, 0x00, 0x00, 0x08, 0x08, 0x08, 0x00, 0x00}},  // 59
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x03, 0x0e, 0x30, 0x30, 0x0e, 0x03, 0x00, 0x00, 0x00, 0x00}},  // 60
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x3f, 0x00, 0x3f, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 61
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x20, 0x18, 0x06, 0x06, 0x18, 0x20, 0x00, 0x00, 0x00, 0x00}},  // 62
    {{0x00, 0x00, 0x00, 0x1c, 0x02, 0x02, 0x04, 0x08, 0x08, 0x00, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 63
    {{0x00, 0x00, 0x00, 0x00, 0x1e, 0x32, 0x21, 0x4f, 0x49, 0x49, 0x4f, 0x20, 0x30, 0x0e, 0x00}},  // 64
    {{0x00, 0x00, 0x00, 0x08, 0x1c, 0x14, 0x14, 0x16, 0x22, 0x3e, 0x23, 0x61, 0x00, 0x00, 0x00}},  // 65
    {{0x00, 0x00, 0x00, 0x3c, 0x22, 0x22, 0x22, 0x3c, 0x22, 0x23, 0x22, 0x3e, 0x00, 0x00, 0x00}},  // 66
    {{0x00, 0x00, 0x00, 0x0e, 0x10, 0x20, 0x20, 0x20, 0x20, 0x20, 0x10, 0x0e, 0x00, 0x00, 0x00}},  // 67
    {{0x00, 0x00, 0x00, 0x3c, 0x26, 0x22, 0x22, 0x22, 0x22, 0x22, 0x26, 0x3c, 0x00, 0x00, 0x00}},  // 68
    {{0x00, 0x00, 0x00, 0x3e, 0x20, 0x20, 0x20, 0x3e, 0x20, 0x20, 0x20, 0x3e, 0x00, 0x00, 0x00}},  // 69
    {{0x00, 0x00, 0x00, 0x3f, 0x30, 0x30, 0x30, 0x3e, 0x30, 0x30, 0x30, 0x30, 0x00, 0x00, 0x00}},  // 70
    {{0x00, 0x00, 0x00, 0x1e, 0x30, 0x20, 0x20, 0x26, 0x22, 0x22, 0x32, 0x1e, 0x00, 0x00, 0x00}},  // 71
    {{0x00, 0x00, 0x00, 0x22, 0x22, 0x22, 0x22, 0x3e, 0x22, 0x22, 0x22, 0x22, 0x00, 0x00, 0x00}},  // 72
    {{0x00, 0x00, 0x00, 0x3e, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x3e, 0x00, 0x00, 0x00}},  // 73
    {{0x00, 0x00, 0x00, 0x1e, 0x06, 0x06, 0x06, 0x06, 0x06, 0x06, 0x04, 0x3c, 0x00, 0x00, 0x00}},  // 74
    {{0x00, 0x00, 0x00, 0x23, 0x26, 0x2c, 0x38, 0x38, 0x24, 0x26, 0x22, 0x23, 0x00, 0x00, 0x00}},  // 75
    {{0x00, 0x00, 0x00, 0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x20, 0x3f, 0x00, 0x00, 0x00}},  // 76
    {{0x00, 0x00, 0x00, 0x63, 0x73, 0x77, 0x75, 0x6d, 0x69, 0x61, 0x61, 0x61, 0x00, 0x00, 0x00}},  // 77
    {{0x00, 0x00, 0x00, 0x32, 0x32, 0x32, 0x2a, 0x2a, 0x26, 0x26, 0x26, 0x22, 0x00, 0x00, 0x00}},  // 78
    {{0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x22, 0x23, 0x22, 0x22, 0x32, 0x1c, 0x00, 0x00, 0x00}},  // 79
    {{0x00, 0x00, 0x00, 0x3e, 0x22, 0x23, 0x22, 0x3e, 0x20, 0x20, 0x20, 0x20, 0x00, 0x00, 0x00}},  // 80
    {{0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x22, 0x23, 0x22, 0x22, 0x32, 0x1c, 0x06, 0x02, 0x00}},  // 81
    {{0x00, 0x00, 0x00, 0x3c, 0x22, 0x22, 0x22, 0x3c, 0x26, 0x22, 0x23, 0x21, 0x00, 0x00, 0x00}},  // 82
    {{0x00, 0x00, 0x00, 0x1c, 0x22, 0x20, 0x30, 0x1c, 0x02, 0x02, 0x22, 0x1c, 0x00, 0x00, 0x00}},  // 83
    {{0x00, 0x00, 0x00, 0x7f, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 84
    {{0x00, 0x00, 0x00, 0x22, 0x22, 0x22, 0x22, 0x22, 0x22, 0x22, 0x22, 0x1c, 0x00, 0x00, 0x00}},  // 85
    {{0x00, 0x00, 0x00, 0x61, 0x22, 0x22, 0x22, 0x12, 0x14, 0x14, 0x1c, 0x08, 0x00, 0x00, 0x00}},  // 86
    {{0x00, 0x00, 0x00, 0x41, 0x41, 0x49, 0x2d, 0x25, 0x36, 0x36, 0x36, 0x32, 0x00, 0x00, 0x00}},  // 87
    {{0x00, 0x00, 0x00, 0x23, 0x32, 0x14, 0x0c, 0x0c, 0x1c, 0x16, 0x22, 0x61, 0x00, 0x00, 0x00}},  // 88
    {{0x00, 0x00, 0x00, 0x63, 0x22, 0x16, 0x1c, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 89
    {{0x00, 0x00, 0x00, 0x3f, 0x02, 0x06, 0x04, 0x08, 0x08, 0x10, 0x20, 0x3f, 0x00, 0x00, 0x00}},  // 90
    {{0x00, 0x00, 0x0c, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0c, 0x00, 0x00}},  // 91
    {{0x00, 0x00, 0x00, 0x20, 0x20, 0x10, 0x10, 0x08, 0x08, 0x04, 0x04, 0x02, 0x02, 0x00, 0x00}},  // 92
    {{0x00, 0x00, 0x1c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x0c, 0x1c, 0x00, 0x00}},  // 93
    {{0x00, 0x00, 0x00, 0x0c, 0x14, 0x22, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 94
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x7f}},  // 95
    {{0x00, 0x00, 0x10, 0x08, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 96
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x02, 0x02, 0x1e, 0x22, 0x22, 0x1a, 0x00, 0x00, 0x00}},  // 97
    {{0x00, 0x00, 0x20, 0x20, 0x20, 0x2c, 0x32, 0x22, 0x22, 0x22, 0x32, 0x3c, 0x00, 0x00, 0x00}},  // 98
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x0e, 0x10, 0x20, 0x20, 0x20, 0x10, 0x0e, 0x00, 0x00, 0x00}},  // 99
    {{0x00, 0x00, 0x02, 0x02, 0x02, 0x1e, 0x26, 0x22, 0x22, 0x22, 0x26, 0x1a, 0x00, 0x00, 0x00}},  // 100
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x3f, 0x20, 0x32, 0x1c, 0x00, 0x00, 0x00}},  // 101
    {{0x00, 0x00, 0x06, 0x08, 0x08, 0x3e, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00, 0x00, 0x00}},  // 102
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x26, 0x22, 0x22, 0x22, 0x26, 0x1a, 0x02, 0x06, 0x1c}},  // 103
    {{0x00, 0x00, 0x20, 0x20, 0x20, 0x2c, 0x32, 0x22, 0x22, 0x22, 0x22, 0x22, 0x00, 0x00, 0x00}},  // 104
    {{0x00, 0x00, 0x08, 0x00, 0x00, 0x38, 0x08, 0x08, 0x08, 0x08, 0x08, 0x3e, 0x00, 0x00, 0x00}},  // 105
    {{0x00, 0x00, 0x04, 0x00, 0x00, 0x1c, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0c, 0x08, 0x38}},  // 106
    {{0x00, 0x00, 0x30, 0x30, 0x30, 0x32, 0x34, 0x38, 0x3c, 0x34, 0x32, 0x33, 0x00, 0x00, 0x00}},  // 107
    {{0x00, 0x00, 0x38, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0e, 0x00, 0x00, 0x00}},  // 108
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x29, 0x29, 0x29, 0x29, 0x29, 0x29, 0x00, 0x00, 0x00}},  // 109
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x2c, 0x32, 0x22, 0x22, 0x22, 0x22, 0x22, 0x00, 0x00, 0x00}},  // 110
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x32, 0x22, 0x22, 0x22, 0x32, 0x1c, 0x00, 0x00, 0x00}},  // 111
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x3c, 0x32, 0x22, 0x22, 0x22, 0x32, 0x3c, 0x20, 0x20, 0x20}},  // 112
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1e, 0x36, 0x22, 0x22, 0x22, 0x36, 0x1e, 0x02, 0x02, 0x02}},  // 113
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1f, 0x18, 0x10, 0x10, 0x10, 0x10, 0x10, 0x00, 0x00, 0x00}},  // 114
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x1c, 0x32, 0x30, 0x1c, 0x02, 0x22, 0x1c, 0x00, 0x00, 0x00}},  // 115
    {{0x00, 0x00, 0x00, 0x08, 0x08, 0x3e, 0x08, 0x08, 0x08, 0x08, 0x08, 0x0e, 0x00, 0x00, 0x00}},  // 116
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x22, 0x22, 0x22, 0x22, 0x22, 0x32, 0x1a, 0x00, 0x00, 0x00}},  // 117
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x22, 0x22, 0x32, 0x14, 0x14, 0x1c, 0x08, 0x00, 0x00, 0x00}},  // 118
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x41, 0x41, 0x29, 0x2a, 0x36, 0x36, 0x32, 0x00, 0x00, 0x00}},  // 119
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x22, 0x14, 0x1c, 0x08, 0x1c, 0x12, 0x22, 0x00, 0x00, 0x00}},  // 120
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x23, 0x22, 0x32, 0x16, 0x14, 0x0c, 0x08, 0x08, 0x08, 0x30}},  // 121
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x3e, 0x02, 0x04, 0x08, 0x10, 0x10, 0x3e, 0x00, 0x00, 0x00}},  // 122
    {{0x00, 0x00, 0x06, 0x08, 0x08, 0x08, 0x08, 0x38, 0x08, 0x08, 0x08, 0x08, 0x06, 0x00, 0x00}},  // 123
    {{0x00, 0x00, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x08, 0x00}},  // 124
    {{0x00, 0x00, 0x38, 0x08, 0x08, 0x08, 0x08, 0x06, 0x08, 0x08, 0x08, 0x08, 0x38, 0x00, 0x00}},  // 125
    {{0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x38, 0x06, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00}},  // 126
}};

}  // namespace jndkit::glyphs
