int process_dev(int c, int p)
{
#ifdef CONFIG_FEATURE_HDPARM_HDIO_UNREGISTER_HWIF
    if (p)
        goto expected_hwif_error;
#endif
    return c + p;
#ifdef CONFIG_FEATURE_HDPARM_HDIO_SCAN_HWIF
expected_hwif_error:
    bb_error_msg(c);
#endif
}
