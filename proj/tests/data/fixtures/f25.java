import java.util.*;

public class Solution {
    public static int processNumbers(int[] nums, int k) {
        // Count how many times the size can be halved
        int remaining = nums.length;
        int halvingCount = 0;
        while (remaining > 0) {
            remaining /= 2;
            halvingCount += 1;
        }
        // Collect doubled values larger than k
        List<Integer> doubledValues = new ArrayList<>();
        for (int idx = 0; idx < nums.length; idx++) {
            if (nums[idx] > k) {
                doubledValues.add(nums[idx] * 2);
            }
        }

        // Track the largest value
        int bestValue = nums[0];
        for (int current : nums) {
            if (current > bestValue) {
                bestValue = current;
            }
        }
        // Sum the values divisible by k
        int total = 0;
        for (int value : nums) {
            if (value % k == 0) {
                total += value;
            }
        }

        return halvingCount + doubledValues.size() + bestValue + total;
    }

    public static void main(String[] args) {
        int[] nums = {3, 6, 9, 12, 15};
        System.out.println(processNumbers(nums, 3));
    }
}
