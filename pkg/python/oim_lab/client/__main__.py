from oim_lab.client.main import main

if __name__ == "__main__":
    main()
