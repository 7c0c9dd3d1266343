"""
Goncharov's coproduct on formal iterated-integral words, and its depth-leading
shadow, which generates the map D_d.
"""
from cyclokappa.coproduct import (
    coassociativity_defect,
    depth_leading_coproduct,
    goncharov_coproduct,
    parse_word,
    render_tensor,
)

N = 5
for text in ["I(0; e1, e2; 1)", "I(0; e1, 0, e3; e2)", "I(0; 0, 0; 1)", "I(0; ; 1)"]:
    w = parse_word(text, N)
    print(f"Delta {text} =")
    print("    " + render_tensor(goncharov_coproduct(w)).replace("\n", "\n    "))
    print(f"  coassociative: {not coassociativity_defect(w)}\n")

w = parse_word("I(0; e1, 0, e3, e4; 1)", N)
print(f"depth-leading part of {w}:")
print("    " + render_tensor(depth_leading_coproduct(w, N)).replace("\n", "\n    "))
