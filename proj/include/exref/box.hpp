#ifndef EXREF_BOX_HPP
#define EXREF_BOX_HPP

#include <memory>
#include <utility>

namespace exref {

/// Owning pointer with value semantics: copies deep-copy and == compares the
/// pointees. Lets recursive AST nodes default their comparison operators.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}  // NOLINT: implicit by design of the AST builders
  Box(const Box& other) : ptr_(std::make_unique<T>(*other)) {}
  Box(Box&& other) noexcept = default;
  Box& operator=(const Box& other) {
    if (this != &other) ptr_ = std::make_unique<T>(*other);
    return *this;
  }
  Box& operator=(Box&& other) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a == *b; }

 private:
  std::unique_ptr<T> ptr_;
};

}  // namespace exref

#endif  // EXREF_BOX_HPP
