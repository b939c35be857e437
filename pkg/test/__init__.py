from src.specmin.testing import run_modules, import_test_module

def run():
    type_check = import_test_module("type_check")
    msg = import_test_module("msg")
    testing = import_test_module("testing")
    graphs = import_test_module("graphs")
    spectral = import_test_module("spectral")
    main_trees = import_test_module("main_trees")
    kernels = import_test_module("kernels")
    reference_data = import_test_module("reference_data")
    minimizer = import_test_module("minimizer")
    oracle = import_test_module("oracle")
    properties = import_test_module("properties")
    pool = import_test_module("pool")
    verify = import_test_module("verify")
    cli = import_test_module("cli")

    return run_modules("specmin", locals())
