//! Line hunks and the AST hunks built on top of them.

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let old = "class Cart {
  int total(int[] prices) {
    int sum = 0;
    for (int p : prices) {
      sum += p;
    }
    return sum;
  }

  // Clears the cart.
  void clear() {
    items.clear();
  }
}
";
    let new = "class Cart {
  int total(int[] prices) {
    int sum = 0;
    for (int p : prices) {
      if (p > 0) {
        sum += p;
      }
    }
    return sum;
  }

  /* Empties the cart. */
  void clear() {
    items.clear();
  }
}
";
    let old_lines: Vec<&str> = old.lines().collect();
    let new_lines: Vec<&str> = new.lines().collect();
    for (i, h) in changepat::hunking::line_diff(&old_lines, &new_lines).iter().enumerate() {
        println!("line hunk {i}: old {:?} new {:?}", h.old_range, h.new_range);
    }

    // The comment edit has a line hunk but no AST hunk.
    let d = changepat::analyze(old, "Cart.java", new, "Cart.java")?;
    for h in &d.ast_hunks {
        println!("ast hunk {} over line hunks {:?}", h.id.index, h.line_hunks);
        for c in &h.changes {
            println!("  {c}");
        }
    }
    Ok(())
}
