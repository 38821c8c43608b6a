"""Writing identities in the small DSL and checking them.

Run: python3 demos/05_identity_dsl.py
"""
from twyang.identdsl import Context, DslSyntaxError, evaluate_check, parse, render
from twyang.tensorops import SYMP

SRC = """
# Yang-Baxter for the sp2 R-matrix
Rb[1,2](u)*Rb[1,3](u+v)*Rb[2,3](v) == Rb[2,3](v)*Rb[1,3](u+v)*Rb[1,2](u);

# unitarity, up to a scalar
Rb[1,2](u)*Rb[1,2](-u) == {1 - u^-2}*I[];

# this one is false
Rb[1,2](u)*Rb[2,3](v) == Rb[2,3](v)*Rb[1,2](u);
"""

stmts = parse(SRC)
print(render(stmts))
print()
print(evaluate_check(stmts, Context.standard(2, SYMP)).summary())

print()
try:
    parse("Rb[1,2](u == I[];")
except DslSyntaxError as e:
    print("syntax error at", e)
