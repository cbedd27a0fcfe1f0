#include <stag/dot.hpp>

#include <cctype>
#include <sstream>

namespace stag {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out + "\"";
}

std::string graph_id(const std::string& name) {
  std::string out;
  for (char c : name) out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out.front()))) out = "g_" + out;
  return out;
}

void emit(const derivation_node& n, int& next, std::ostringstream& os) {
  const int id = next++;
  std::string label = n.tree + "\n" + n.lemma;
  if (!n.surface.empty() && n.surface != n.lemma) label += " (" + n.surface + ")";
  os << "  n" << id << " [label=" << quote(label);
  if (n.recovered) os << ", style=dashed";
  os << "];\n";
  for (const auto& c : n.children) {
    const int cid = next;
    emit(c, next, os);
    std::string edge = (c.op == attach_op::substitution ? "subst@" : "adj@") + c.site.display();
    os << "  n" << id << " -> n" << cid << " [label=" << quote(edge)
       << (c.op == attach_op::adjunction ? ", style=dotted" : "") << "];\n";
  }
}

void emit(const tree_node& n, int& next, bool features, std::ostringstream& os) {
  const int id = next++;
  std::string label = n.label.empty() ? "ε" : n.label;
  if (n.mark == node_mark::substitution) label += "↓";
  if (features && !n.top.empty()) label += "\n" + to_string(n.top);
  os << "  n" << id << " [label=" << quote(label) << "];\n";
  if (n.mark == node_mark::anchor && !n.word.empty()) {
    const int wid = next++;
    os << "  n" << wid << " [label=" << quote(n.word) << ", shape=plaintext];\n";
    os << "  n" << id << " -> n" << wid << ";\n";
  }
  for (const auto& c : n.children) {
    const int cid = next;
    emit(c, next, features, os);
    os << "  n" << id << " -> n" << cid << ";\n";
  }
}

}  // namespace

std::string derivation_to_dot(const derivation_node& d, const std::string& graph_name) {
  std::ostringstream os;
  os << "digraph " << graph_id(graph_name) << " {\n  node [shape=box];\n";
  int next = 0;
  emit(d, next, os);
  os << "}\n";
  return os.str();
}

std::string derived_to_dot(const tree_node& root, const std::string& graph_name, bool features) {
  std::ostringstream os;
  os << "digraph " << graph_id(graph_name) << " {\n  node [shape=plaintext];\n";
  int next = 0;
  emit(root, next, features, os);
  os << "}\n";
  return os.str();
}

}  // namespace stag
