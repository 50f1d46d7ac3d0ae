from orientsign.cli import main

main()
