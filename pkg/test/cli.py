'''Test the specmin command line as a subprocess'''

from src.specmin.testutil import Grep, JSONFilter

global_options = ["python3", "-m", "src.specmin"]

SLOW = ["run_verify_k5"]


run_main_trees_table = ["main-trees", "--k", "5", "--output", "table"]

out_main_trees_table = Grep(r"F5_1\s+4\s+2,2\s")


run_main_trees_graph6 = ["main-trees", "--k", "2", "--output", "graph6"]

out_main_trees_graph6 = "Bg"


run_kernel_missing_r = ["kernel", "--k", "5"]

err_kernel_missing_r = "ERROR: kernel needs --k and --r"

code_kernel_missing_r = 2


run_minimize_extra_r = ["minimize", "--n", "9", "--k", "2", "--r", "0"]

err_minimize_extra_r = "ERROR: minimize does not take --r"

code_minimize_extra_r = 2


run_minimize_k_and_alpha = ["minimize", "--n", "9", "--k", "2", "--alpha", "7"]

err_minimize_k_and_alpha = "ERROR: minimize needs exactly one of --k and --alpha"

code_minimize_k_and_alpha = 2


run_bad_suite = ["verify", "--suite", "everything"]

err_bad_suite = Grep(r"invalid choice: 'everything'")

code_bad_suite = 2


run_minimize_star = ["minimize", "--n", "5", "--k", "1", "--output", "graph6"]

out_minimize_star = "Ds_"


run_minimize_json = ["minimize", "--n", "9", "--alpha", "7"]

out_minimize_json = JSONFilter(["graph6", "certificate", "rho", "rho2"], '''
{
  "alpha": 7,
  "assignment": [
    3,
    3
  ],
  "ell": 0,
  "k": 2,
  "kernel_assignment": [
    3,
    3
  ],
  "main_tree": "F2_1",
  "n": 9,
  "provenance": "construction",
  "r": 0,
  "record": "minimizer",
  "rho2_closed_form": "rho^2 = 5"
}
''')


run_minimize_oracle_fallback = ["minimize", "--n", "12", "--k", "4"]

out_minimize_oracle_fallback = Grep(r'"provenance": "oracle"')


run_minimize_too_large = ["minimize", "--n", "30", "--k", "5"]

err_minimize_too_large = "ERROR: n=30 is below n0=65 for k=5, r=1; the oracle fallback is limited to n <= 18"

code_minimize_too_large = 2


run_kernel_table = ["kernel", "--k", "3", "--r", "1", "--output", "table"]

out_kernel_table = Grep(r"F3_1\s+\d+\s+6,4,6\s+\d\.\d+\s+yes")


run_oracle_table = ["oracle", "--n", "12", "--alpha", "8", "--output", "table"]

out_oracle_table = Grep(r"^n\s+alpha\s+graph6\s+rho\n12\s+8\s")


run_verify_tables = ["verify", "--suite", "tables-1to4", "--output", "table"]

out_verify_tables = Grep(r"pass tables-1to4: k=4 r=2 kernels\n")


run_verify_k5 = ["verify", "--suite", "k5"]

out_verify_k5 = Grep(r'"name": "k=5 r=0 kernels", "passed": true')
