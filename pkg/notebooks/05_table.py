# %% [markdown]
# # Sweeping the meridian trace
#
# The `table` command walks x over an interval and reports the surgery
# torsion at every Riley root. For the trefoil and figure-eight the result
# has a one-line closed form to compare against.

# %%
from torsionlab import cli

code, report, _ = cli.run(["table", "--n", "-1", "--sweep-x", "2.5:4:7"])
print("exit code", code)
for row in report["results"]:
    x = row["x"].real
    print(f"x={x:.3f}  u={row['u'].real:+.5f}  tau_M={row['tau_M'].real:.12f}  "
          f"(2x-2)/(x^2(x^2-5))={(2 * x - 2) / (x * x * (x * x - 5)):.12f}")

# %% [markdown]
# The same report as CSV, complex columns split into _re and _im:

# %%
print(cli.render(report, "csv").splitlines()[0])
