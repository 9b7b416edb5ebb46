from qeuler.launch_cli import main

main()
