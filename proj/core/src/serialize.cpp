#include <charconv>
#include <cmath>
#include <system_error>

#include "quadspect/quadtree.hpp"

namespace quadspect {

namespace {

void write_preorder(const QuadNode& node, std::string& out) {
  out.push_back(static_cast<char>(node.kind));
  for (const auto& c : node.children) write_preorder(c, out);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }

  void expect(char c, const char* what) {
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected ") + what);
    ++pos_;
  }

  void expect(std::string_view word) {
    if (text_.substr(pos_, word.size()) != word) fail("expected '" + std::string(word) + "'");
    pos_ += word.size();
  }

  std::string_view token() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\n') ++pos_;
    if (pos_ == start) fail("expected a value");
    return text_.substr(start, pos_ - start);
  }

  int integer() {
    const std::size_t start = pos_;
    const auto tok = token();
    int v = 0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size()) fail_at("malformed integer", start);
    return v;
  }

  double real() {
    const std::size_t start = pos_;
    const auto tok = token();
    double v = 0.0;
    auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || end != tok.data() + tok.size() || !std::isfinite(v))
      fail_at("malformed number", start);
    return v;
  }

  void node(QuadNode& out, int depth, int max_depth) {
    if (pos_ >= text_.size()) fail("unexpected end of node string");
    const char c = text_[pos_];
    switch (c) {
      case 'B': out.kind = NodeKind::Black; break;
      case 'W': out.kind = NodeKind::White; break;
      case 'U':
        if (depth != max_depth) fail("'U' is only legal at maximal depth");
        out.kind = NodeKind::Undetermined;
        break;
      case 'G':
        if (depth >= max_depth) fail("'G' at maximal depth");
        out.kind = NodeKind::Gray;
        break;
      default:
        fail(std::string("unexpected node letter '") + c + "'");
    }
    ++pos_;
    if (out.kind == NodeKind::Gray) {
      out.children.assign(4, QuadNode{});
      for (auto& child : out.children) node(child, depth + 1, max_depth);
    }
  }

  bool at_end() const { return pos_ == text_.size(); }

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError(what + " at offset " + std::to_string(at), at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what), position_(position) {}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

std::string serialize(const QuadtreeModel& m) {
  std::string out = "QT1 " + std::to_string(m.max_depth) + ' ' + format_double(m.root_box.x.lo) +
                    ' ' + format_double(m.root_box.x.hi) + ' ' + format_double(m.root_box.y.lo) +
                    ' ' + format_double(m.root_box.y.hi) + '\n';
  write_preorder(m.root, out);
  out.push_back('\n');
  return out;
}

QuadtreeModel deserialize(std::string_view text) {
  Reader in(text);
  QuadtreeModel m;
  in.expect("QT1");
  in.expect(' ', "' '");
  const std::size_t depth_at = in.pos();
  m.max_depth = in.integer();
  if (m.max_depth < 1 || m.max_depth > 30) in.fail_at("depth out of range", depth_at);
  double bounds[4];
  for (double& b : bounds) {
    in.expect(' ', "' '");
    b = in.real();
  }
  if (!(bounds[0] < bounds[1]) || !(bounds[2] < bounds[3])) in.fail("empty root box");
  m.root_box = Box2{Interval{bounds[0], bounds[1]}, Interval{bounds[2], bounds[3]}};
  in.expect('\n', "newline after header");
  in.node(m.root, 0, m.max_depth);
  in.expect('\n', "newline after node string");
  if (!in.at_end()) in.fail("trailing data");
  m.complement = swap_black_white(m.root);
  m.stats = count_nodes(m.root);
  return m;
}

}  // namespace quadspect
