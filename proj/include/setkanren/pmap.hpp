#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>

namespace setkanren {

// Persistent map from uint32 keys, as a path-copying 16-way trie over
// LSB-first nibbles. Copies O(depth) nodes per insert; lookups allocate
// nothing. Shared subtrees keep pointer identity across versions, which
// diff() exploits to skip unchanged regions.
template <typename T>
class IntTrieMap {
  struct Node {
    std::array<std::shared_ptr<const Node>, 16> kids;
    std::optional<std::uint32_t> key;
    std::optional<T> val;
  };
  using NodePtr = std::shared_ptr<const Node>;

  NodePtr root_;
  std::size_t size_ = 0;

  explicit IntTrieMap(NodePtr root, std::size_t size) : root_(std::move(root)), size_(size) {}

  static NodePtr insert_rec(const NodePtr& node, std::uint32_t key, std::uint32_t shifted,
                            const T& val, bool& added) {
    auto next = node ? std::make_shared<Node>(*node) : std::make_shared<Node>();
    if (!next->key) {
      next->key = key;
      next->val = val;
      added = true;
      return next;
    }
    if (*next->key == key) {
      next->val = val;
      added = false;
      return next;
    }
    // Slot taken by a different key: the resident stays, the new key descends
    // along its next nibble. Distinct keys part ways within 8 levels.
    next->kids[shifted & 0xF] =
        insert_rec(next->kids[shifted & 0xF], key, shifted >> 4, val, added);
    return next;
  }

 public:
  IntTrieMap() = default;

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool same_root(const IntTrieMap& other) const { return root_.get() == other.root_.get(); }

  const T* find(std::uint32_t key) const {
    const Node* node = root_.get();
    std::uint32_t shifted = key;
    while (node) {
      if (node->key && *node->key == key) return &*node->val;
      node = node->kids[shifted & 0xF].get();
      shifted >>= 4;
    }
    return nullptr;
  }

  IntTrieMap insert(std::uint32_t key, const T& val) const {
    bool added = false;
    NodePtr root = insert_rec(root_, key, key, val, added);
    return IntTrieMap(std::move(root), size_ + (added ? 1 : 0));
  }

  template <typename F>
  void for_each(F&& f) const {
    for_each_node(root_.get(), f);
  }

  // Visits every key whose value differs between a and b, passing pointers
  // that are null on the side lacking the key. Subtrees shared by pointer
  // are skipped wholesale.
  template <typename F>
  static void diff(const IntTrieMap& a, const IntTrieMap& b, F&& f) {
    diff_nodes(a.root_.get(), b.root_.get(), f);
  }

 private:
  template <typename F>
  static void for_each_node(const Node* node, F& f) {
    if (!node) return;
    if (node->key) f(*node->key, *node->val);
    for (const auto& kid : node->kids) for_each_node(kid.get(), f);
  }

  template <typename F>
  static void emit_side(const Node* node, bool left, F& f) {
    if (!node) return;
    if (node->key) {
      if (left)
        f(*node->key, &*node->val, static_cast<const T*>(nullptr));
      else
        f(*node->key, static_cast<const T*>(nullptr), &*node->val);
    }
    for (const auto& kid : node->kids) emit_side(kid.get(), left, f);
  }

  template <typename F>
  static void diff_nodes(const Node* na, const Node* nb, F& f) {
    if (na == nb) return;
    if (!na) {
      emit_side(nb, false, f);
      return;
    }
    if (!nb) {
      emit_side(na, true, f);
      return;
    }
    if (na->key && nb->key && *na->key == *nb->key) {
      f(*na->key, &*na->val, &*nb->val);
    } else {
      // Entries may sit at different depths between versions; report each on
      // its own side and let the caller match them up. With insert-only use
      // (same insertion path) this branch is where an a-only or b-only entry
      // at this node surfaces.
      if (na->key && (!nb->key || *na->key != *nb->key)) {
        const T* bv = find_below(nb, *na->key);
        f(*na->key, &*na->val, bv);
      }
      if (nb->key && (!na->key || *na->key != *nb->key)) {
        const T* av = find_below(na, *nb->key);
        f(*nb->key, av, &*nb->val);
      }
    }
    for (int i = 0; i < 16; i++) diff_nodes(na->kids[i].get(), nb->kids[i].get(), f);
  }

  // Full-subtree scan. A key's resting depth depends on insertion order, so
  // from an arbitrary interior node the remaining nibble offset is unknown.
  // Only reached from diff on mismatched slots, which insert-only use never
  // produces; kept for correctness under general use.
  static const T* find_below(const Node* node, std::uint32_t key) {
    if (!node) return nullptr;
    if (node->key && *node->key == key) return &*node->val;
    for (const auto& kid : node->kids) {
      if (const T* r = find_below(kid.get(), key)) return r;
    }
    return nullptr;
  }
};

}  // namespace setkanren
